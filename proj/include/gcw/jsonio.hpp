#ifndef GCW_JSONIO_HPP
#define GCW_JSONIO_HPP

// Deterministic machine-readable output: a small ordered JSON writer with
// floating-point formatting pinned to 17 significant digits, CSV emission,
// and the run configuration shared by the command-line driver.

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace gcw {

// Formats with %.17g so that equal doubles print identically across runs.
std::string fmt17(double v);

class JsonValue;
using JsonPtr = std::shared_ptr<JsonValue>;

class JsonValue {
  public:
    static JsonPtr number(double v);
    static JsonPtr integer(long long v);
    static JsonPtr boolean(bool v);
    static JsonPtr str(const std::string& s);
    static JsonPtr array();
    static JsonPtr object();

    void push(JsonPtr v);                           // arrays
    void set(const std::string& key, JsonPtr v);    // objects (insertion order kept)
    void set(const std::string& key, double v) { set(key, number(v)); }
    void set(const std::string& key, long long v) { set(key, integer(v)); }
    void set(const std::string& key, int v) { set(key, integer(v)); }
    void set(const std::string& key, bool v) { set(key, boolean(v)); }
    void set(const std::string& key, const std::string& v) { set(key, str(v)); }
    void set(const std::string& key, const char* v) { set(key, str(v)); }

    std::string dump(int indent = 0) const;

  private:
    enum class Kind { Number, Integer, Bool, String, Array, Object } kind_ = Kind::Object;
    double num_ = 0.0;
    long long int_ = 0;
    bool bool_ = false;
    std::string str_;
    std::vector<JsonPtr> arr_;
    std::vector<std::pair<std::string, JsonPtr>> obj_;
    void write(std::string& out, int indent, int depth) const;
};

void write_text_file(const std::string& path, const std::string& contents);

// CSV with a header row, comma separator, '.' decimal, %.17g numbers.
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& columns);

// columns returned in file order; throws on malformed input
std::vector<std::vector<double>> read_csv(const std::string& path,
                                          std::vector<std::string>* header = nullptr);

struct RunConfig {
    std::string subcommand;
    std::map<std::string, std::string> options; // flag -> value, textual
    std::string output_dir = ".";
    std::string format = "csv";
    long long seed = 0;

    std::string to_json() const;
    static RunConfig from_json(const std::string& text);
};

} // namespace gcw

#endif
