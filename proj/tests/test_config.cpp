#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>

#include "gcw/jsonio.hpp"

using namespace gcw;

TEST_CASE("seventeen significant digits round-trip") {
    for (double v : {0.1, 1.0 / 3.0, 123.268929592, -2.12507248338e-9, 1e300}) {
        std::string s = fmt17(v);
        CHECK(std::stod(s) == v);
        CHECK(fmt17(v) == s); // deterministic
    }
}

TEST_CASE("json writer is ordered and escaped") {
    JsonPtr o = JsonValue::object();
    o->set("b_first", 1.5);
    o->set("a_second", "quote \" and backslash \\");
    JsonPtr arr = JsonValue::array();
    arr->push(JsonValue::integer(7));
    arr->push(JsonValue::boolean(false));
    o->set("list", arr);
    std::string s = o->dump(0);
    CHECK(s == "{\"b_first\":1.5,\"a_second\":\"quote \\\" and backslash \\\\\","
               "\"list\":[7,false]}");
}

TEST_CASE("run configuration round-trips losslessly") {
    RunConfig c;
    c.subcommand = "wave";
    c.options = {{"mu", "-0.001"}, {"s", "1"}, {"theta", "0"}};
    c.output_dir = "out";
    c.format = "json";
    c.seed = 1234567;
    RunConfig d = RunConfig::from_json(c.to_json());
    CHECK(d.subcommand == c.subcommand);
    CHECK(d.options == c.options);
    CHECK(d.output_dir == c.output_dir);
    CHECK(d.format == c.format);
    CHECK(d.seed == c.seed);
    CHECK(d.to_json() == c.to_json());
}

TEST_CASE("csv round trip") {
    std::string path = "test_roundtrip_tmp.csv";
    std::vector<std::vector<double>> cols{{1.0, 2.5, -3.125}, {0.1, 1.0 / 3.0, 4e-17}};
    write_csv(path, {"x", "phi"}, cols);
    std::vector<std::string> header;
    std::vector<std::vector<double>> back = read_csv(path, &header);
    CHECK(header == std::vector<std::string>{"x", "phi"});
    CHECK(back == cols);
    std::filesystem::remove(path);
}
