#include "gcw/jsonio.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "gcw/errors.hpp"

namespace gcw {

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

JsonPtr JsonValue::number(double v) {
    auto p = std::make_shared<JsonValue>();
    p->kind_ = Kind::Number;
    p->num_ = v;
    return p;
}
JsonPtr JsonValue::integer(long long v) {
    auto p = std::make_shared<JsonValue>();
    p->kind_ = Kind::Integer;
    p->int_ = v;
    return p;
}
JsonPtr JsonValue::boolean(bool v) {
    auto p = std::make_shared<JsonValue>();
    p->kind_ = Kind::Bool;
    p->bool_ = v;
    return p;
}
JsonPtr JsonValue::str(const std::string& s) {
    auto p = std::make_shared<JsonValue>();
    p->kind_ = Kind::String;
    p->str_ = s;
    return p;
}
JsonPtr JsonValue::array() {
    auto p = std::make_shared<JsonValue>();
    p->kind_ = Kind::Array;
    return p;
}
JsonPtr JsonValue::object() {
    auto p = std::make_shared<JsonValue>();
    p->kind_ = Kind::Object;
    return p;
}

void JsonValue::push(JsonPtr v) {
    if (kind_ != Kind::Array) throw DomainError("JsonValue::push on non-array");
    arr_.push_back(std::move(v));
}

void JsonValue::set(const std::string& key, JsonPtr v) {
    if (kind_ != Kind::Object) throw DomainError("JsonValue::set on non-object");
    for (auto& [k, val] : obj_)
        if (k == key) {
            val = std::move(v);
            return;
        }
    obj_.emplace_back(key, std::move(v));
}

namespace {
void escape_into(std::string& out, const std::string& s) {
    out += '"';
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default: out += c;
        }
    }
    out += '"';
}
} // namespace

void JsonValue::write(std::string& out, int indent, int depth) const {
    std::string pad = indent > 0 ? std::string(static_cast<size_t>(indent) * (depth + 1), ' ') : "";
    std::string closepad = indent > 0 ? std::string(static_cast<size_t>(indent) * depth, ' ') : "";
    std::string nl = indent > 0 ? "\n" : "";
    switch (kind_) {
        case Kind::Number: out += fmt17(num_); break;
        case Kind::Integer: out += std::to_string(int_); break;
        case Kind::Bool: out += bool_ ? "true" : "false"; break;
        case Kind::String: escape_into(out, str_); break;
        case Kind::Array: {
            out += '[';
            for (size_t i = 0; i < arr_.size(); ++i) {
                out += (i ? "," : "") + nl + pad;
                arr_[i]->write(out, indent, depth + 1);
            }
            if (!arr_.empty()) out += nl + closepad;
            out += ']';
            break;
        }
        case Kind::Object: {
            out += '{';
            for (size_t i = 0; i < obj_.size(); ++i) {
                out += (i ? "," : "") + nl + pad;
                escape_into(out, obj_[i].first);
                out += indent > 0 ? ": " : ":";
                obj_[i].second->write(out, indent, depth + 1);
            }
            if (!obj_.empty()) out += nl + closepad;
            out += '}';
            break;
        }
    }
}

std::string JsonValue::dump(int indent) const {
    std::string out;
    write(out, indent, 0);
    if (indent > 0) out += '\n';
    return out;
}

void write_text_file(const std::string& path, const std::string& contents) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw DomainError("cannot open for writing: " + path);
    f << contents;
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& columns) {
    if (header.size() != columns.size()) throw DomainError("write_csv: header/column mismatch");
    std::string out;
    for (size_t c = 0; c < header.size(); ++c) out += (c ? "," : "") + header[c];
    out += '\n';
    size_t rows = columns.empty() ? 0 : columns[0].size();
    for (const auto& col : columns)
        if (col.size() != rows) throw DomainError("write_csv: ragged columns");
    for (size_t r = 0; r < rows; ++r) {
        for (size_t c = 0; c < columns.size(); ++c)
            out += (c ? "," : "") + fmt17(columns[c][r]);
        out += '\n';
    }
    write_text_file(path, out);
}

std::vector<std::vector<double>> read_csv(const std::string& path,
                                          std::vector<std::string>* header) {
    std::ifstream f(path);
    if (!f) throw DomainError("cannot open for reading: " + path);
    std::string line;
    if (!std::getline(f, line)) throw DomainError("read_csv: empty file");
    std::vector<std::string> names;
    {
        std::stringstream ss(line);
        std::string tok;
        while (std::getline(ss, tok, ',')) names.push_back(tok);
    }
    if (header) *header = names;
    std::vector<std::vector<double>> cols(names.size());
    while (std::getline(f, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string tok;
        size_t c = 0;
        while (std::getline(ss, tok, ',')) {
            if (c >= cols.size()) throw DomainError("read_csv: too many fields");
            cols[c++].push_back(std::stod(tok));
        }
        if (c != cols.size()) throw DomainError("read_csv: short row");
    }
    return cols;
}

std::string RunConfig::to_json() const {
    JsonPtr root = JsonValue::object();
    root->set("subcommand", subcommand);
    JsonPtr opts = JsonValue::object();
    for (const auto& [k, v] : options) opts->set(k, v);
    root->set("options", opts);
    root->set("output_dir", output_dir);
    root->set("format", format);
    root->set("seed", seed);
    return root->dump(2);
}

RunConfig RunConfig::from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    RunConfig c;
    c.subcommand = j.value("subcommand", "");
    c.output_dir = j.value("output_dir", ".");
    c.format = j.value("format", "csv");
    c.seed = j.value("seed", 0LL);
    if (j.contains("options"))
        for (auto it = j["options"].begin(); it != j["options"].end(); ++it)
            c.options[it.key()] = it.value().get<std::string>();
    return c;
}

} // namespace gcw
