#include <doctest.h>

#include <fstream>
#include <sstream>

#include "oracles.hpp"

using namespace rzcomb;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const std::string kConfigs = RZCOMB_CONFIG_DIR;

std::set<std::string> strings(const Json& arr) {
  std::set<std::string> out;
  for (const auto& s : arr) out.insert(s.get<std::string>());
  return out;
}

int error_line(const std::string& text) {
  try {
    load_config(text);
  } catch (const ConfigError& e) {
    return e.line();
  }
  return -1;
}

}  // namespace

TEST_CASE("GU3 config") {
  LoadedAnalysis in = load_config(read_file(kConfigs + "/gu3.yaml"));
  const auto& g = in.datum->group();
  CHECK(format_cycles(g, in.datum->sigma()) == "(s0)(s1 s2)");
  CHECK(in.level == 0);
  REQUIRE(in.level_prime.has_value());
  CHECK(*in.level_prime == bit(0));
  CHECK(in.config.q == std::vector<int>{2, 3});
}

TEST_CASE("config errors carry positions") {
  const std::string bad_level =
      "datum: {family: A, rank: 2, sigma: varsigma0, mu: [1, 0]}\n"
      "level:\n"
      "  K: [s1]\n";
  CHECK(error_line(bad_level) == 3);
  try {
    load_config(bad_level);
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).rfind("config:3:", 0) == 0);
  }
  CHECK(error_line("datum: {family: E, rank: 6, sigma: id, mu: [1, 0, 0, 0, 0, 0]}\n") == 1);
  CHECK(error_line("datum: {family: A, rank: 2, sigma: id, mu: [1, 0]}\nunknown: 3\n") == 2);
  CHECK(error_line("datum: {family: A, rank: 2, sigma: id, mu: [0, 0]}\n") == 1);
  CHECK(error_line("datum: {family: A, rank: 2, sigma: id, mu: [1, 0]}\nq: [6]\n") == 2);
  CHECK(error_line("datum: {family: A, rank: 2, sigma: id, mu: [1, 0]}\nlevel: {K: [s1], K_prime: [s1]}\n") == 2);
  CHECK(error_line("datum: {family: A, rank: 2, sigma: id, mu: [1, 0]}\nlevel: {K: [s0, s1, s2]}\n") == 2);
  CHECK(error_line("datum: {family: C, rank: 2, sigma: [1, 0, 2], mu: [1, 0]}\n") == 1);
  CHECK(error_line("datum: {family: A, rank: 5, sigma: id, mu: [4, 0, 0, 0, 0]}\nbudget: {max_two_rho: 10}\n") >= 1);
  CHECK_THROWS_AS(load_config("datum: [1, 2\n"), ConfigError);
}

TEST_CASE("restriction of scalars config") {
  LoadedAnalysis in = load_config(read_file(kConfigs + "/drinfeld_res2.yaml"));
  const auto& d = *in.datum;
  CHECK(d.group().num_components() == 2);
  CHECK(d.component_permutation() == IntVec{1, 0});
  CHECK(format_cycles(d.group(), d.sigma()) == "(s0 s0' s2 s2' s1 s1')");
  AnalysisReport rep = run_analysis(in, Section::Classify);
  CHECK(rep.invariants_ok);
  CHECK(rep.body["classify"]["fully_hn"] == true);
}

TEST_CASE("round trip") {
  for (const char* name : {"gu3.yaml", "drinfeld_res2.yaml"}) {
    AnalysisConfig cfg = parse_config(read_file(kConfigs + "/" + name));
    CHECK(parse_config(dump_config(cfg)) == cfg);
    CHECK(config_from_json(config_to_json(cfg)) == cfg);
  }
  AnalysisConfig explicit_sigma = parse_config("datum: {family: A, rank: 3, sigma: [0, 3, 2, 1], mu: [1, 0, 0]}\n");
  CHECK(explicit_sigma.sigma_perm == NodePerm{0, 3, 2, 1});
  CHECK(parse_config(dump_config(explicit_sigma)) == explicit_sigma);
  CHECK(config_from_json(config_to_json(explicit_sigma)) == explicit_sigma);
}

TEST_CASE("GU3 full report") {
  LoadedAnalysis in = load_config(read_file(kConfigs + "/gu3.yaml"));
  AnalysisReport rep = run_analysis(in, Section::All);
  const Json& b = rep.body;
  CHECK(rep.invariants_ok);
  CHECK_FALSE(rep.truncated);
  CHECK(b["schema_version"] == kSchemaVersion);
  CHECK(b["adm"]["size"] == 7);
  std::set<std::string> words;
  for (const auto& e : b["adm"]["elements"]) words.insert(e["word"].get<std::string>());
  CHECK(words == std::set<std::string>{"tau1", "s0 . tau1", "s1 . tau1", "s2 . tau1", "s0 s2 . tau1", "s1 s0 . tau1",
                                       "s2 s1 . tau1"});
  CHECK(strings(b["adm"]["K_adm_zero"]) ==
        std::set<std::string>{"tau1", "s0 . tau1", "s1 . tau1", "s2 . tau1", "s1 s0 . tau1"});
  std::map<std::string, std::string> pi;
  for (const auto& e : b["fibers"]["pi_prime"]) pi[e["w"]] = e["w_prime"];
  CHECK(pi == std::map<std::string, std::string>{{"tau1", "tau1"},
                                                 {"s0 . tau1", "s1 . tau1"},
                                                 {"s1 . tau1", "s1 . tau1"},
                                                 {"s2 . tau1", "s2 . tau1"},
                                                 {"s1 s0 . tau1", "s1 s0 . tau1"}});
  std::map<std::string, std::string> totals;
  for (const auto& r : b["fibers"]["rows"]) totals[r["w_prime"]] = r["total"];
  CHECK(totals == std::map<std::string, std::string>{
                      {"tau1", "1"}, {"s2 . tau1", "1"}, {"s1 . tau1", "2"}, {"s1 s0 . tau1", "1 + q"}});
  CHECK(b["oracle"].size() == 2);
  CHECK_FALSE(b.contains("timing_ms"));
  CHECK(run_analysis(in, Section::All, RunOptions{true}).body.contains("timing_ms"));
}

TEST_CASE("Stamm adm report") {
  LoadedAnalysis in = load_config(
      "datum: {family: A, rank: 1, res_degree: 2, sigma: id, mu: [[1], [1]]}\n"
      "level: {K: [s0, s0']}\n");
  AnalysisReport rep = run_analysis(in, Section::Adm);
  CHECK(rep.body["adm"]["size"] == 9);
  CHECK(strings(rep.body["adm"]["K_adm"]) ==
        std::set<std::string>{"tau1 tau1'", "s1 . tau1 tau1'", "s1' . tau1 tau1'", "s1 s1' . tau1 tau1'"});
}

TEST_CASE("Lubin-Tate classification") {
  for (const char* k : {"[]", "[s0]", "[s1, s2]", "[s0, s2]"}) {
    LoadedAnalysis in = load_config(std::string("datum: {family: A, rank: 2, sigma: id, mu: [1, 0]}\nlevel: {K: ") + k + "}\n");
    AnalysisReport rep = run_analysis(in, Section::Classify);
    bool found = false;
    for (const auto& v : rep.body["classify"]["verdicts"])
      if (v["predicate"] == "zero_dim") {
        CHECK(v["verdict"] == true);
        found = true;
      }
    CHECK(found);
  }
}

TEST_CASE("determinism and recheck") {
  LoadedAnalysis in = load_config(read_file(kConfigs + "/gu3.yaml"));
  AnalysisReport a = run_analysis(in, Section::All), b = run_analysis(in, Section::All);
  CHECK(emit_report(a, "json") == emit_report(b, "json"));
  CHECK(emit_report(a, "text") == emit_report(b, "text"));
  AnalysisReport rc = recheck_report(a.body);
  CHECK(rc.invariants_ok);

  // A tampered pi' entry is caught.
  Json bad = a.body;
  bad["fibers"]["pi_prime"][0]["w_prime"] = "s2 . tau1";
  CHECK_FALSE(recheck_report(bad).invariants_ok);
  // So is a non-admissible element in the basic subset.
  Json bad2 = a.body;
  bad2["adm"]["K_adm_zero"].push_back("s0 s1 . tau1");
  CHECK_FALSE(recheck_report(bad2).invariants_ok);

  const std::string text = emit_report(a, "text");
  CHECK(text.find("schema_version: 1") == 0);
  CHECK(text.find("s1 s0 . tau1") != std::string::npos);
  CHECK_THROWS(emit_report(a, "xml"));
}

TEST_CASE("sections and budgets") {
  CHECK(parse_section("fibers") == Section::Fibers);
  CHECK(section_name(Section::Star) == "star");
  CHECK_THROWS_AS(parse_section("nope"), RzError);
  LoadedAnalysis in = load_config("datum: {family: A, rank: 3, sigma: id, mu: [2, 0, 0]}\nbudget: {max_adm: 10}\n");
  AnalysisReport rep = run_analysis(in, Section::Adm);
  CHECK(rep.truncated);
  CHECK(rep.body.contains("truncated"));
}
