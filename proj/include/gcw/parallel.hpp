#ifndef GCW_PARALLEL_HPP
#define GCW_PARALLEL_HPP

// Deterministic chunked parallel map: results are written by index, so the
// output is independent of scheduling.  Worker count comes from GCW_THREADS
// (default 1).

#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace gcw {

inline int env_thread_count() {
    const char* v = std::getenv("GCW_THREADS");
    if (!v) return 1;
    int n = std::atoi(v);
    return n < 1 ? 1 : n;
}

inline void parallel_for(int n, const std::function<void(int)>& body) {
    int workers = std::min(env_thread_count(), n > 0 ? n : 1);
    if (workers <= 1) {
        for (int i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
            for (int i = w; i < n; i += workers) body(i);
        });
    for (auto& t : pool) t.join();
}

} // namespace gcw

#endif
