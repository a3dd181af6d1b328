#ifndef GCW_VERIFY_HPP
#define GCW_VERIFY_HPP

// Verification suites: each check re-derives a quantity by an independent
// route and compares at a pinned tolerance.  The report is deterministic
// (identical runs produce byte-identical JSON).

#include <string>
#include <vector>

#include "gcw/jsonio.hpp"

namespace gcw {

struct Check {
    std::string name;
    bool pass = false;
    std::string detail; // observed values, 17 significant digits
};

struct VerifyReport {
    std::string suite;
    std::vector<Check> checks;
    bool all_pass() const;
    void add(const std::string& name, bool pass, const std::string& detail);
    std::string to_json() const;
};

VerifyReport verify_kernel();
// tau_filter / s_filter restrict the parameter points (0 = full grid)
VerifyReport verify_fredholm(double tau_filter = 0.0, double s_filter = 0.0);
VerifyReport verify_coeffs(double tau_filter = 0.0, double s_filter = 0.0);
VerifyReport verify_nf();
VerifyReport verify_waves();
std::vector<VerifyReport> verify_all();
std::string report_to_json(const std::vector<VerifyReport>& reports);

} // namespace gcw

#endif
