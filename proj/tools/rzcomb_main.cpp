// rzcomb: EKOR / admissible-set combinatorics from a YAML config.
//
//   rzcomb all --config gu3.yaml --format text
//   rzcomb fibers --config gu3.yaml --out gu3.json
//   rzcomb classify --config gu3.json --recheck     (re-verify a saved report)
//   rzcomb sweep --max-two-rho 6
//
// Exit codes: 0 all invariants held, 1 usage or config error, 2 invariant breach.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "rzcomb/report.hpp"

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw rzcomb::RzError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_out(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw rzcomb::RzError("cannot write " + path);
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace rzcomb;
  CLI::App app{"Admissible sets, EKOR strata and level-change fibers for Coxeter data"};
  app.require_subcommand(1);

  std::string config_path, out_path, format = "json";
  long long budget = -1;
  std::vector<int> qs;
  bool recheck = false, timing = false;
  int max_two_rho = 10, max_a_nodes = 6, threads = 0;

  auto common = [&](CLI::App* sub, bool needs_config) {
    auto* opt = sub->add_option("--config", config_path, "YAML config, or a JSON report with --recheck");
    if (needs_config) opt->required()->check(CLI::ExistingFile);
    sub->add_option("--out", out_path, "output path (default stdout)");
    sub->add_option("--format", format, "json or text")->check(CLI::IsMember({"json", "text"}));
    sub->add_flag("--timing", timing, "include wall-clock timings");
  };
  std::vector<std::pair<CLI::App*, Section>> analyses;
  for (Section s : {Section::Adm, Section::Crit, Section::Classify, Section::Fibers, Section::Star, Section::Oracle,
                    Section::All}) {
    CLI::App* sub = app.add_subcommand(section_name(s), "run the " + section_name(s) + " analysis");
    common(sub, s != Section::Oracle);
    sub->add_option("--budget", budget, "maximum |Adm(mu)| to enumerate")->check(CLI::PositiveNumber);
    sub->add_option("--q", qs, "prime powers for the oracle (comma separated)")->delimiter(',');
    sub->add_flag("--recheck", recheck, "re-verify witnesses (of --config if it is a report)");
    analyses.emplace_back(sub, s);
  }
  CLI::App* sweep = app.add_subcommand("sweep", "run every check over the built-in corpus");
  common(sweep, false);
  sweep->add_option("--max-two-rho", max_two_rho, "bound on <mu, 2rho> for irreducible data")->check(CLI::Range(1, 12));
  sweep->add_option("--max-a-nodes", max_a_nodes, "largest n for type A_{n-1}")->check(CLI::Range(2, 6));
  sweep->add_option("--threads", threads, "worker threads (default RZCOMB_THREADS or all cores)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    AnalysisReport rep;
    if (sweep->parsed()) {
      SweepOptions opts;
      opts.max_two_rho = max_two_rho;
      opts.max_a_nodes = max_a_nodes;
      opts.threads = threads;
      opts.progress = [](const std::string& s) { std::cerr << s << "\n"; };
      rep = run_sweep_report(opts, timing);
    } else {
      Section section = Section::All;
      for (auto& [sub, s] : analyses)
        if (sub->parsed()) section = s;
      std::string text = config_path.empty() ? std::string("datum: {family: A, rank: 1, sigma: id, mu: [1]}\n")
                                             : slurp(config_path);
      Json saved = Json::parse(text, nullptr, false);
      if (recheck && saved.is_object() && saved.contains("schema_version")) {
        rep = recheck_report(saved);
      } else {
        LoadedAnalysis in = load_config(text);
        if (budget > 0) in.config.budget.max_adm = static_cast<std::size_t>(budget);
        if (!qs.empty()) {
          in.config.q = qs;
          in = resolve_config(in.config);
        }
        rep = run_analysis(in, section, RunOptions{timing});
        if (recheck) {
          AnalysisReport rc = recheck_report(rep.body);
          rep.body["recheck"] = rc.body;
          rep.invariants_ok = rep.invariants_ok && rc.invariants_ok;
          rep.body["invariants_ok"] = rep.invariants_ok;
        }
      }
    }
    write_out(out_path, emit_report(rep, format));
    if (rep.truncated) {
      std::cerr << "rzcomb: budget exceeded; report truncated\n";
      return 1;
    }
    if (!rep.invariants_ok) {
      std::cerr << "rzcomb: invariant breach (see report)\n";
      return 2;
    }
    return 0;
  } catch (const InvariantBreach& e) {
    std::cerr << "rzcomb: invariant breach: " << e.what() << "\n";
    return 2;
  } catch (const RzError& e) {
    std::cerr << "rzcomb: " << e.what() << "\n";
    return 1;
  }
}
