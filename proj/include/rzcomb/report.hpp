// Analysis configs (YAML), report assembly (JSON / text) and witness rechecks.

#pragma once

#include <json.hpp>

#include "rzcomb/hermitian.hpp"
#include "rzcomb/sweep.hpp"

namespace rzcomb {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

// Carries the 1-based line and column of the offending config entry (0 when unknown).
class ConfigError : public RzError {
 public:
  ConfigError(int line, int column, const std::string& msg);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_, column_;
};

struct AnalysisConfig {
  std::string family;
  int rank = 0;
  int res_degree = 1;
  // Exactly one of the two is set: a name such as "varsigma0" or "rho1*varsigma0",
  // or an explicit permutation of the nodes of one component.
  std::string sigma_name;
  NodePerm sigma_perm;
  std::vector<IntVec> mu;  // one coweight per copy
  std::vector<std::string> level;
  std::optional<std::vector<std::string>> level_prime;
  std::vector<int> q;
  Budget budget;

  friend bool operator==(const AnalysisConfig&, const AnalysisConfig&) = default;
};

// Parsed and validated datum; the level masks are checked for sigma-stability.
struct LoadedAnalysis {
  AnalysisConfig config;
  std::shared_ptr<const CoxeterDatum> datum;
  NodeMask level = 0;
  std::optional<NodeMask> level_prime;
};

AnalysisConfig parse_config(std::string_view text);
LoadedAnalysis load_config(std::string_view text);
// Validation without YAML positions; throws RzError.
LoadedAnalysis resolve_config(const AnalysisConfig& cfg);
std::string dump_config(const AnalysisConfig& cfg);
Json config_to_json(const AnalysisConfig& cfg);
AnalysisConfig config_from_json(const Json& j);

std::string format_cycles(const AffineWeylGroup& g, const NodePerm& p);

enum class Section { Adm, Crit, Classify, Fibers, Star, Oracle, All };
Section parse_section(std::string_view name);
std::string section_name(Section s);

struct AnalysisReport {
  Json body;
  bool invariants_ok = true;
  bool truncated = false;
};

struct RunOptions {
  bool timing = false;
};

AnalysisReport run_analysis(const LoadedAnalysis& in, Section section, const RunOptions& opts = {});
AnalysisReport run_sweep_report(const SweepOptions& opts, bool timing = false);
std::string emit_report(const AnalysisReport& report, std::string_view format);

// Re-verifies the witnesses and the pi' map recorded in a JSON report using
// Bruhat comparisons and partial conjugation only.
AnalysisReport recheck_report(const Json& report);

}  // namespace rzcomb
