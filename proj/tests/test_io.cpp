#include <doctest.h>

#include <sstream>

#include <nlohmann/json.hpp>

#include "pdlab/io.hpp"

using namespace pdlab;

TEST_CASE("csv escaping follows RFC 4180") {
  CHECK(csv_escape("plain") == "plain");
  CHECK(csv_escape("a,b") == "\"a,b\"");
  CHECK(csv_escape("he said \"hi\"") == "\"he said \"\"hi\"\"\"");
  CHECK(csv_escape("line\nbreak") == "\"line\nbreak\"");
}

TEST_CASE("format_double round-trips") {
  for (double x : {0.1, 1.0 / 3.0, 1e-300, 123456789.123456789, -0.0}) {
    CHECK(std::strtod(format_double(x).c_str(), nullptr) == x);
  }
}

TEST_CASE("csv output embeds config and header") {
  Table t;
  t.columns = {"a", "b"};
  t.rows.push_back({std::int64_t{1}, 0.5});
  t.rows.push_back({std::int64_t{2}, std::string("x,y")});
  OutputMeta meta;
  meta.config = {{"command", "demo"}, {"theta", "1"}};
  meta.seed = 7;
  meta.version = "0.1.0";
  std::ostringstream os;
  write_csv(os, t, meta);
  const std::string out = os.str();
  CHECK(out.find("# version=0.1.0\n") != std::string::npos);
  CHECK(out.find("# seed=7\n") != std::string::npos);
  CHECK(out.find("# command=demo\n") != std::string::npos);
  CHECK(out.find("a,b\n") != std::string::npos);
  CHECK(out.find("1,0.5\n") != std::string::npos);
  CHECK(out.find("2,\"x,y\"\n") != std::string::npos);
}

TEST_CASE("json output has the meta/data schema") {
  Table t;
  t.columns = {"k", "v"};
  t.rows.push_back({std::int64_t{3}, 0.25});
  OutputMeta meta;
  meta.config = {{"command", "demo"}};
  meta.seed = 9;
  meta.version = "0.1.0";
  std::ostringstream os;
  write_json(os, t, meta);
  const auto doc = nlohmann::json::parse(os.str());
  CHECK(doc["meta"]["seed"] == 9);
  CHECK(doc["meta"]["version"] == "0.1.0");
  CHECK(doc["meta"]["config"]["command"] == "demo");
  REQUIRE(doc["data"].size() == 1);
  CHECK(doc["data"][0]["k"] == 3);
  CHECK(doc["data"][0]["v"] == 0.25);
}

TEST_CASE("identical tables serialize to identical bytes") {
  Table t;
  t.columns = {"x"};
  for (int i = 0; i < 100; ++i) t.rows.push_back({0.1 * i});
  OutputMeta meta;
  meta.config = {{"command", "demo"}};
  std::ostringstream a, b;
  write_csv(a, t, meta);
  write_csv(b, t, meta);
  CHECK(a.str() == b.str());
}
