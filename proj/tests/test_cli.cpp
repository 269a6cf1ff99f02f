#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <json.hpp>
#include <string>
#include <sys/wait.h>

using nlohmann::json;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  std::string cmd = std::string("'") + LATMOD_CLI_PATH + "' " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult r;
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string data(const std::string& name) { return std::string(LATMOD_DATA_DIR) + "/" + name; }

json run_json(const std::string& args, int expect_exit) {
  RunResult r = run_cli(args + " --json");
  CHECK(r.exit_code == expect_exit);
  return json::parse(r.out);
}

}  // namespace

TEST_CASE("check: three-chain structure report") {
  json j = run_json("check " + data("three_chain.json"), 0);
  CHECK(j["valid"] == true);
  CHECK(j["boolean_core"] == json::array({0, 2}));
  CHECK(j["prime_filters"].size() == 2);
  CHECK(j["retraction_unique"]["verdict"] == false);
  CHECK(j["retraction_unique"]["witness"] == 1);
  CHECK(j["names"][1] == "m");

  RunResult human = run_cli("check " + data("three_chain.json"));
  CHECK(human.exit_code == 0);
  CHECK(human.out.find("witness m") != std::string::npos);
}

TEST_CASE("check: boolean lattice has a unique retraction") {
  json j = run_json("check " + data("square.json"), 0);
  CHECK(j["retraction_unique"]["verdict"] == true);
  CHECK(j["boolean_core"].size() == 4);
}

TEST_CASE("check: invalid inputs exit with code 2") {
  CHECK(run_cli("check " + data("pentagon.json")).exit_code == 2);
  CHECK(run_cli("check " + data("bad.json")).exit_code == 2);
  CHECK(run_cli("check " + data("no_such_file.json")).exit_code == 2);

  RunResult r = run_cli("check " + data("pentagon.json") + " --json");
  CHECK(r.exit_code == 2);
  json j = json::parse(r.out);
  CHECK(j["error"]["code"] == "NotDistributive");
  CHECK(j["error"]["witness"].size() == 3);
}

TEST_CASE("model: canonical three-chain") {
  json j = run_json("model " + data("canonical3.json"), 0);
  CHECK(j["canonical"] == true);
  CHECK(j["gamma"] == json::array({2}));
  CHECK(j["l1_size"] == 3);
  CHECK(j["psi"]["image_is_core"] == true);
  CHECK(j["strongly_positively_closed"]["verdict"] == false);
  CHECK(j["positively_closed"]["verdict"] == false);
  CHECK(j["cross_check_mismatches"].empty());

  bool saw_retraction_route = false;
  for (const auto& r : j["positively_closed"]["route_verdicts"])
    if (r["route"] == "retraction") {
      saw_retraction_route = true;
      CHECK(r["verdict"] == false);
      CHECK(r["witness"]["x"] == 1);
    }
  CHECK(saw_retraction_route);
}

TEST_CASE("model: boolean identity and the non-canonical section model") {
  json j = run_json("model " + data("bool_id.json"), 0);
  CHECK(j["strongly_positively_closed"]["verdict"] == true);
  CHECK(j["positively_closed"]["verdict"] == true);

  json j2 = run_json("model " + data("m_top.json"), 0);
  CHECK(j2["canonical"] == false);
  CHECK(j2["psi"].is_null());
  CHECK(j2["strongly_positively_closed"]["verdict"] == true);
  CHECK(j2["positively_closed"]["verdict"] == true);
  CHECK(j2["gamma"] == json::array({1, 2}));
}

TEST_CASE("model: route selection") {
  json j = run_json("model " + data("canonical3.json") + " --route local", 0);
  CHECK(j["positively_closed"]["route_verdicts"].size() == 1);
  CHECK(j["positively_closed"]["route_verdicts"][0]["route"] == "local");
  CHECK(j["positively_closed"]["verdict"] == false);
}

TEST_CASE("enumerate: small suites pass") {
  json j2 = run_json("enumerate 2", 0);
  CHECK(j2["all_ok"] == true);
  CHECK(j2["lattices"] == 4);

  json j3 = run_json("enumerate 3", 0);
  CHECK(j3["all_ok"] == true);
  CHECK(j3["lattices"] == 9);
}

TEST_CASE("openq eval") {
  RunResult norm = run_cli("openq eval \"(0,1r2) u (1r2,3)\"");
  CHECK(norm.exit_code == 0);
  CHECK(norm.out == "(0,3)\n");

  RunResult comp = run_cli("openq eval \"(0,1) u (1,2)\" complement");
  CHECK(comp.exit_code == 0);
  CHECK(comp.out.find("absent") != std::string::npos);

  json jc = run_json("openq eval \"(0,1) u (1,2)\" complement", 0);
  CHECK(jc["result"].is_null());

  RunResult meet = run_cli("openq eval \"(0,2)\" meet \"(1,3)\"");
  CHECK(meet.out == "(1,2)\n");
  RunResult leq = run_cli("openq eval \"(0,1)\" leq \"(0,2)\"");
  CHECK(leq.out == "true\n");

  CHECK(run_cli("openq eval \"(1,0)\"").exit_code == 2);
}

TEST_CASE("openq separation certifies and is deterministic per seed") {
  std::string args = "openq separation --seed 1 --pairs 25 --samples 6 --json";
  RunResult a = run_cli(args);
  CHECK(a.exit_code == 0);
  json j = json::parse(a.out);
  CHECK(j["pass"] == true);
  CHECK(j["strong_split_absent"] == true);
  CHECK(j["hom_pairs_ok"] == 25);

  RunResult b = run_cli(args);
  json jb = json::parse(b.out);
  jb.erase("timing_ms");
  j.erase("timing_ms");
  CHECK(jb == j);

  RunResult human = run_cli("openq separation --seed 2 --pairs 10 --samples 3");
  CHECK(human.exit_code == 0);
  CHECK(human.out.find("PASS") != std::string::npos);
}
