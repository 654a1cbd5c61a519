#include <doctest.h>

#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <regex>
#include <set>
#include <sstream>

#include "afr/cli.hpp"
#include "afr/error.hpp"

using namespace afr;
using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string strip_timing(std::string text) {
  return std::regex_replace(text, std::regex("\"timing_ms\": [0-9.e+-]+"), "\"timing_ms\": 0");
}

}  // namespace

TEST_CASE("context spec parsing") {
  auto s = parse_context_spec("A3k4");
  CHECK(s.family == 'A');
  CHECK(s.rank == 3);
  CHECK(s.level == 4);

  auto t = parse_context_spec("family=E rank=8 level=2");
  CHECK(t.family == 'E');
  CHECK(t.rank == 8);
  CHECK(t.level == 2);

  CHECK(parse_context_spec("g2k3").family == 'g');
  CHECK_THROWS_AS(parse_context_spec("Zk1"), UsageError);
  CHECK_THROWS_AS(parse_context_spec("A3"), UsageError);
  CHECK_THROWS_AS(parse_context_spec("A3k0"), UsageError);
  CHECK_THROWS_AS(parse_context_spec("family=A rank=3"), UsageError);
}

TEST_CASE("pplus command") {
  auto r = cli({"pplus", "A1k2"});
  REQUIRE(r.code == 0);
  auto doc = json::parse(r.out);
  CHECK(doc["command"] == "pplus");
  CHECK(doc["context"]["size"] == 3);
  REQUIRE(doc["payload"].size() == 3);
  CHECK(doc["payload"][0]["labels"] == "0");
  CHECK(doc["payload"][0]["simple_current_order"] == 1);
  CHECK(doc["payload"][2]["simple_current_order"] == 2);
}

TEST_CASE("smatrix command") {
  auto r = cli({"--format", "csv", "smatrix", "A1k1"});
  REQUIRE(r.code == 0);
  std::istringstream rows(r.out);
  std::string line;
  std::getline(rows, line);
  CHECK(line == "row,col,re,im");
  int count = 0;
  const double expect = 1.0 / std::sqrt(2.0);
  while (std::getline(rows, line)) {
    ++count;
    const auto last = line.rfind(',');
    const auto second = line.rfind(',', last - 1);
    const double re = std::stod(line.substr(second + 1, last - second - 1));
    CHECK(std::abs(std::abs(re) - expect) < 1e-12);
  }
  CHECK(count == 4);
}

TEST_CASE("fusion command") {
  auto r = cli({"fusion", "E6k2", "1 0 0 0 0 0", "0 0 0 0 1 0"});
  REQUIRE(r.code == 0);
  auto doc = json::parse(r.out);
  REQUIRE(doc["payload"].size() == 3);
  std::set<std::string> got;
  for (const auto& row : doc["payload"]) got.insert(row["labels"].get<std::string>());
  CHECK(got == std::set<std::string>{"0 0 0 0 0 0", "0 0 0 0 0 1", "1 0 0 0 1 0"});
  CHECK(doc["checks"][0]["pass"] == true);
}

TEST_CASE("qdim command") {
  auto r = cli({"qdim", "G2k1", "0 1"});
  REQUIRE(r.code == 0);
  auto doc = json::parse(r.out);
  REQUIRE(doc["payload"].size() == 1);
  const double golden = (1 + std::sqrt(5.0)) / 2;
  CHECK(std::abs(std::stod(doc["payload"][0]["qdim"].get<std::string>()) - golden) < 1e-12);
}

TEST_CASE("autos command") {
  auto r = cli({"autos", "F4k4", "--mode", "compare"});
  REQUIRE(r.code == 0);
  auto doc = json::parse(r.out);
  CHECK(doc["payload"]["order"] == 4);
  CHECK(doc["checks"][0]["pass"] == true);
}

TEST_CASE("iso command") {
  auto r = cli({"iso", "F4k2", "E8k3"});
  REQUIRE(r.code == 0);
  auto doc = json::parse(r.out);
  CHECK(doc["payload"]["fingerprints_match"] == true);
  CHECK(doc["payload"]["isomorphic"] == true);
  CHECK(doc["checks"][0]["pass"] == true);

  auto neg = cli({"iso", "A1k2", "A2k1"});
  REQUIRE(neg.code == 0);
  auto negdoc = json::parse(neg.out);
  CHECK(negdoc["payload"]["isomorphic"] == false);
}

TEST_CASE("reports are deterministic modulo timing") {
  auto a = cli({"pplus", "B3k2"});
  auto b = cli({"pplus", "B3k2"});
  CHECK(strip_timing(a.out) == strip_timing(b.out));
}

TEST_CASE("usage errors exit with code 2") {
  CHECK(cli({"pplus", "Z9k1"}).code == 2);
  CHECK(cli({"pplus"}).code == 2);
  CHECK(cli({"fusion", "A1k2", "7", "1"}).code == 2);
  CHECK(cli({"autos", "A1k2", "--mode", "nonsense"}).code == 2);
}

TEST_CASE("fusion table disk cache round trip") {
  const auto dir = std::filesystem::temp_directory_path() / "afr-cache-test";
  std::filesystem::remove_all(dir);
  auto a = cli({"--cache-dir", dir.string(), "fusion", "B3k2", "1 0 0", "0 0 1"});
  REQUIRE(a.code == 0);
  bool found = false;
  for (const auto& entry : std::filesystem::directory_iterator(dir))
    found = found || entry.path().filename().string().find("B3k2") != std::string::npos;
  CHECK(found);
  auto b = cli({"--cache-dir", dir.string(), "fusion", "B3k2", "1 0 0", "0 0 1"});
  REQUIRE(b.code == 0);
  CHECK(strip_timing(a.out) == strip_timing(b.out));
  std::filesystem::remove_all(dir);
}
