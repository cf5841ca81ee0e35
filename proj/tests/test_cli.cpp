#include "doctest.h"

#include <sstream>
#include <string>
#include <vector>

#include "ordunit/cli.hpp"

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "ordunit");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  std::ostringstream out, err;
  const int code = ordunit::cli::main(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(ORDUNIT_DATA_DIR) + "/" + name; }

ordunit::io::json run_json(std::vector<std::string> args) {
  args.push_back("--format");
  args.push_back("json");
  return ordunit::io::json::parse(run(std::move(args)).out);
}

}  // namespace

TEST_CASE("check exit codes") {
  CHECK(run({"check", "--functional", data("sqrt_gap.json")}).code == 1);
  CHECK(run({"check", "--functional", data("choquet.json")}).code == 0);
  CHECK(run({"check", "--functional", data("maxplus.json")}).code == 0);
  CHECK(run({"check", "--functional", data("nonmonotone_choquet.json")}).code == 1);
  CHECK(run({"check", "--functional", data("truncated.json")}).code == 2);
  CHECK(run({"check", "--functional", data("missing.json")}).code == 2);
  CHECK(run({"check", "--operator", data("clamp.json")}).code == 0);
  CHECK(run({"check", "--operator", data("clamp_onto.json")}).code == 1);
  CHECK(run({"check", "--operator", data("stack_operator.json")}).code == 0);
  CHECK(run({"check"}).code == 2);
  CHECK(run({"bogus"}).code == 2);
  CHECK(run({"check", "--samples", "0", "--functional", data("choquet.json")}).code == 2);
}

TEST_CASE("sqrt-gap witness in the report") {
  const auto j = run_json({"check", "--functional", data("sqrt_gap.json")});
  CHECK(j["exit_code"] == 1);
  CHECK(j["status"] == "violation");
  const auto& checks = j["sections"][0]["checks"];
  bool found = false;
  for (const auto& c : checks) {
    if (c["property"] != "order_preserving") continue;
    found = true;
    CHECK(c["pass"] == false);
    const auto& entries = c["witness"]["entries"];
    CHECK(entries[0]["name"] == "x");
    CHECK(entries[0]["value"] == ordunit::io::json::array({0.25, 0.5}));
    CHECK(entries[1]["name"] == "y");
    CHECK(entries[1]["value"] == ordunit::io::json::array({0.5, 0.5}));
  }
  CHECK(found);
}

TEST_CASE("norm") {
  const auto j = run_json({"norm", "--at", "3,-4"});
  CHECK(j["sections"][0]["payload"]["norms"][0]["norm"] == 4.0);
  const auto w = run_json({"norm", "--at=0,-3", "--space", data("wedge.json")});
  CHECK(w["sections"][0]["payload"]["norms"][0]["norm"].get<double>() == doctest::Approx(1.5));
  CHECK(run({"norm", "--at", "1,2,3", "--space", data("plane.json")}).code == 2);
}

TEST_CASE("extend") {
  const auto j = run_json({"extend", "--partial", data("partial_empty.json"), "--target", "1,0"});
  CHECK(j["exit_code"] == 0);
  const auto& step = j["sections"][1]["payload"]["steps"][0];
  CHECK(step["p_minus"] == 0.0);
  CHECK(step["p_plus"] == 1.0);
  CHECK(step["chosen"] == 0.5);

  const auto text = run({"extend", "--partial", data("partial.json"), "--target", "0,1", "--rule", "lower"});
  CHECK(text.code == 0);
  CHECK(text.out.find("\"chosen\":0.0") != std::string::npos);

  CHECK(run({"extend", "--partial", data("partial_inconsistent.json"), "--target", "0,1"}).code == 1);
  CHECK(run({"extend", "--partial", data("partial.json"), "--target", "0,1", "--rule", "given:5"}).code == 1);
  CHECK(run({"extend", "--partial", data("partial.json"), "--target", "0,1", "--rule", "given:0.25"}).code == 0);
  CHECK(run({"extend", "--partial", data("partial.json"), "--target", "0,1", "--rule", "sideways"}).code == 2);
}

TEST_CASE("openness") {
  const auto fail = run_json({"openness", "--operator", data("clamp.json"), "--at", "2,4", "--epsilon", "1",
                              "--delta", "0.1"});
  CHECK(fail["exit_code"] == 1);
  const auto& y = fail["sections"][0]["payload"]["counterexample"];
  CHECK(std::abs(y[0].get<double>() - 2.0) < 0.1);
  CHECK(std::abs(y[1].get<double>() - 3.0) < 0.1);
  CHECK(run({"openness", "--operator", data("clamp.json"), "--epsilon", "0.25", "--delta", "0.25"}).code == 0);
  CHECK(run({"openness", "--operator", data("clamp.json"), "--at", "1,2,3"}).code == 2);
}

TEST_CASE("compact") {
  const auto j = run_json({"compact", "--sequence", data("oscillating.json")});
  CHECK(j["exit_code"] == 0);
  for (const auto& i : j["sections"][0]["payload"]["indices"]) CHECK(i.get<int>() % 2 == 0);
  CHECK(j["sections"][0]["payload"]["limit_capacity"]["values"]["1"] == 0.6);
  CHECK(run({"compact", "--sequence", data("oscillating.json"), "--min-length", "50"}).code == 2);
  CHECK(run({"compact", "--sequence", data("truncated.json")}).code == 2);
}

TEST_CASE("gallery verdicts do not depend on the seed") {
  std::vector<std::pair<std::string, bool>> reference;
  for (const char* seed : {"1", "7", "12345"}) {
    const auto j = run_json({"gallery", "--seed", seed, "--samples", "2048"});
    CHECK(j["exit_code"] == 0);
    std::vector<std::pair<std::string, bool>> verdicts;
    for (const auto& s : j["sections"]) verdicts.emplace_back(s["name"], s["payload"]["observed"]);
    if (reference.empty()) reference = verdicts;
    CHECK(verdicts == reference);
  }
}

TEST_CASE("json output is reproducible") {
  const auto a = run({"gallery", "--seed", "7", "--format", "json"});
  const auto b = run({"gallery", "--seed", "7", "--format", "json"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
}
