#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

using nlohmann::json;

namespace {

#ifndef HERMOA_CLI_BIN
#error "HERMOA_CLI_BIN must be defined"
#endif
#ifndef HERMOA_GOLDEN_DIR
#error "HERMOA_GOLDEN_DIR must be defined"
#endif

const std::string kBin = HERMOA_CLI_BIN;
const std::string kGolden = HERMOA_GOLDEN_DIR;

struct RunResult {
  int exit_code;
  std::string stdout_text;
};

int temp_counter = 0;

std::string temp_path(const std::string& tag) {
  return "hermoa_cli_test_" + std::to_string(++temp_counter) + "_" + tag;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

RunResult run(const std::string& args) {
  std::string out = temp_path("stdout.txt");
  std::string cmd = kBin + " " + args + " >" + out + " 2>/dev/null";
  int status = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.stdout_text = slurp(out);
  std::remove(out.c_str());
  return r;
}

json parse_summary(const RunResult& r) {
  REQUIRE_FALSE(r.stdout_text.empty());
  return json::parse(r.stdout_text);
}

}  // namespace

TEST_CASE("gen-oa writes the restricted array and reports success") {
  std::string file = temp_path("a0.txt");
  RunResult r = run("gen-oa --q 2 --n 2 --variant A0 --output " + file);
  CHECK(r.exit_code == 0);
  json j = parse_summary(r);
  CHECK(j["ok"] == true);
  CHECK(j["N"] == 8);
  CHECK(j["k"] == 4);
  CHECK(j["simple"] == true);
  CHECK(j["index_at"]["2"] == 2);

  std::string text = slurp(file);
  CHECK(text.substr(0, text.find('\n')) == "8 4 2 2 2");
  CHECK(text == slurp(kGolden + "/oa_2_2_A0.txt"));
  std::remove(file.c_str());
}

TEST_CASE("gen-oa full variant at q=3") {
  std::string file = temp_path("a.txt");
  RunResult r = run("gen-oa --q 3 --n 2 --variant A --output " + file);
  CHECK(r.exit_code == 0);
  json j = parse_summary(r);
  CHECK(j["ok"] == true);
  CHECK(j["N"] == 81);
  CHECK(j["k"] == 9);
  CHECK(j["simple"] == false);
  CHECK(j["index_at"]["2"] == 9);
  CHECK(slurp(file).substr(0, 10) == "81 9 3 2 9");
  std::remove(file.c_str());
}

TEST_CASE("gen-oa is deterministic") {
  std::string f1 = temp_path("det1.txt");
  std::string f2 = temp_path("det2.txt");
  CHECK(run("gen-oa --q 3 --n 2 --variant A0 --output " + f1).exit_code == 0);
  CHECK(run("gen-oa --q 3 --n 2 --variant A0 --output " + f2).exit_code == 0);
  std::string t1 = slurp(f1);
  CHECK_FALSE(t1.empty());
  CHECK(t1 == slurp(f2));
  std::remove(f1.c_str());
  std::remove(f2.c_str());
}

TEST_CASE("verify-oa accepts the golden file and flags the mutants") {
  CHECK(run("verify-oa --input " + kGolden + "/oa_2_2_A0.txt").exit_code == 0);
  CHECK(run("verify-oa --input " + kGolden + "/oa_4_3_2_2.txt").exit_code == 0);

  RunResult bad = run("verify-oa --input " + kGolden + "/oa_2_2_A0_flipped_cell.txt");
  CHECK(bad.exit_code == 1);
  json j = parse_summary(bad);
  CHECK(j["ok"] == false);

  // unparseable input is a usage error, not a property violation
  CHECK(run("verify-oa --input " + kGolden + "/oa_2_2_A0_bad_symbol.txt").exit_code == 2);
  CHECK(run("verify-oa --input no_such_file.txt").exit_code == 2);
}

TEST_CASE("gen-design and verify-design round trip") {
  std::string file = temp_path("design.json");
  RunResult g = run("gen-design --q 2 --n 2 --output " + file);
  CHECK(g.exit_code == 0);
  json j = parse_summary(g);
  CHECK(j["ok"] == true);
  CHECK(j["v"] == 8);
  CHECK(j["b"] == 14);
  CHECK(j["lambda"] == 3);
  CHECK(j["is_affine"] == true);

  RunResult v = run("verify-design --input " + file);
  CHECK(v.exit_code == 0);
  CHECK(parse_summary(v)["ok"] == true);

  SUBCASE("tampering with the stored design flips the verdict") {
    std::string text = slurp(file);
    json doc = json::parse(text);
    // duplicate the first block member list entry
    doc["blocks"][0]["members"][0] = doc["blocks"][0]["members"][1];
    std::string bad_file = temp_path("bad_design.json");
    std::ofstream(bad_file) << doc.dump();
    RunResult bad = run("verify-design --input " + bad_file);
    CHECK(bad.exit_code == 1);
    std::remove(bad_file.c_str());
  }
  std::remove(file.c_str());
}

TEST_CASE("census agrees with the closed-form affine count") {
  RunResult r = run("census --q 3 --n 2");
  CHECK(r.exit_code == 0);
  json j = parse_summary(r);
  CHECK(j["ok"] == true);
  CHECK(j["affine_points"] == 27);
  CHECK(j["total_points"] == 28);
}

TEST_CASE("field-table prints the structure of GF(4)") {
  std::string out = temp_path("ft.txt");
  int status = std::system((kBin + " field-table 2 2 >" + out + " 2>/dev/null").c_str());
  CHECK(WEXITSTATUS(status) == 0);
  std::string text = slurp(out);
  CHECK(text.find("GF(4)") != std::string::npos);
  CHECK(text.find("x^2+x+1") != std::string::npos);
  CHECK(text.find("T0:") != std::string::npos);
  std::remove(out.c_str());
}

TEST_CASE("usage errors exit with code 2") {
  CHECK(run("").exit_code == 2);                         // no subcommand
  CHECK(run("gen-oa").exit_code == 2);                   // missing --q
  CHECK(run("gen-oa --q 6 --n 2").exit_code == 2);       // not a prime power
  CHECK(run("gen-oa --q 2 --n 1").exit_code == 2);       // n too small
  CHECK(run("gen-oa --q 2 --variant B").exit_code == 2); // unknown variant
  CHECK(run("no-such-command").exit_code == 2);
}
