#include "doctest.h"
#include "fsrigid/cli.hpp"
#include "fsrigid/parallel.hpp"

#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

using namespace fsrigid;

namespace {

struct Outcome {
  int code = 0;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "fsrigid");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  Outcome o;
  o.code = cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
  o.out = out.str();
  o.err = err.str();
  return o;
}

Json parse_json(const Outcome& o) { return Json::parse(o.out); }

std::string strip_timestamp(const std::string& s) {
  std::istringstream in(s);
  std::string line, kept;
  while (std::getline(in, line)) {
    if (line.find("\"timestamp\"") == std::string::npos) kept += line + "\n";
  }
  return kept;
}

}  // namespace

TEST_CASE("defaults") {
  RunConfig c;
  CHECK(c.seed == 42);
  CHECK(c.samples == 25);
  CHECK(c.fd_step == 1e-4);
  CHECK(c.tol == 1e-5);
  CHECK(c.quad_order == 32);
}

TEST_CASE("obstruction --symbolic") {
  Outcome o = invoke({"obstruction", "--symbolic", "--json"});
  CHECK(o.code == 0);
  Json j = parse_json(o);
  CHECK(j["schema"] == 1);
  CHECK(j["overall"] == "pass");
  CHECK(j["results"]["verdict"] == true);
  CHECK(j["results"]["at"]["total"] == "-7200000/7");
  CHECK(j["results"]["at"]["f_cubed"] == "-1/7");
}

TEST_CASE("obstruction with the numeric bridge") {
  Outcome o = invoke({"obstruction"});
  CHECK(o.code == 0);
  CHECK(o.out.find("bridge.S") != std::string::npos);
}

TEST_CASE("verify integrals") {
  Outcome o = invoke({"verify", "integrals", "--m", "2", "--n", "3", "--quad-order", "32", "--json"});
  CHECK(o.code == 0);
  Json rows = parse_json(o)["results"]["rows"];
  REQUIRE(rows.size() == 6);
  for (const auto& r : rows) CHECK(r["rel_error"].get<double>() < 1e-10);
  CHECK(rows[0]["exact"] == "4/5");
}

TEST_CASE("scan") {
  Outcome o = invoke({"scan", "--max-dim", "9", "--json"});
  CHECK(o.code == 0);
  Json rows = parse_json(o)["results"]["rows"];
  std::vector<std::pair<int, int>> got;
  for (const auto& r : rows) {
    got.emplace_back(r["m"].get<int>(), r["n"].get<int>());
    CHECK(r["nonzero"] == true);
  }
  std::vector<std::pair<int, int>> want{{2, 3}, {2, 5}, {2, 7}, {3, 4}, {3, 6}, {4, 5}};
  CHECK(got == want);
  CHECK(rows[0]["value"] == "-7200000/7");
}

TEST_CASE("koiso-cp") {
  Outcome o = invoke({"koiso-cp", "--json"});
  CHECK(o.code == 0);
  CHECK(parse_json(o)["checks"].size() == 3);
}

TEST_CASE("verify geometry") {
  Outcome o = invoke({"verify", "geometry", "--m", "2", "--n", "3", "--samples", "3"});
  CHECK(o.code == 0);
  CHECK(o.out.find("overall: pass") != std::string::npos);
  Outcome strict = invoke({"verify", "geometry", "--samples", "2", "--tol", "1e-30"});
  CHECK(strict.code == 1);
}

TEST_CASE("usage errors exit 2") {
  CHECK(invoke({}).code == 2);
  CHECK(invoke({"frobnicate"}).code == 2);
  CHECK(invoke({"scan", "--max-dim", "notanumber"}).code == 2);
  CHECK(invoke({"scan", "--max-dim", "3"}).code == 2);
  CHECK(invoke({"verify", "integrals", "--m", "3", "--n", "2"}).code == 2);
  CHECK(invoke({"verify", "geometry", "--gamma", "diagonal"}).code == 2);
  CHECK(invoke({"verify", "geometry", "--fd-step", "-1"}).code == 2);
  CHECK(invoke({"verify"}).code == 2);
}

TEST_CASE("json is byte-identical apart from the timestamp") {
  const std::vector<std::vector<std::string>> commands{
      {"verify", "geometry", "--samples", "4", "--gamma", "random", "--json"},
      {"verify", "integrals", "--json"},
      {"obstruction", "--json"},
      {"scan", "--max-dim", "9", "--json"},
      {"koiso-cp", "--json"}};
  for (const auto& cmd : commands) {
    Outcome a = invoke(cmd);
    Outcome b = invoke(cmd);
    CHECK(strip_timestamp(a.out) == strip_timestamp(b.out));
    CHECK(parse_json(a).contains("timestamp"));
  }
}

TEST_CASE("single-threaded runs match") {
  const std::vector<std::string> cmd{"verify", "geometry", "--samples", "6", "--json"};
  Outcome threaded = invoke(cmd);
  setenv(kSingleThreadEnv, "1", 1);
  CHECK(single_threaded());
  Outcome single = invoke(cmd);
  unsetenv(kSingleThreadEnv);
  CHECK(strip_timestamp(threaded.out) == strip_timestamp(single.out));
}
