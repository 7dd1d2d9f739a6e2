// Corpus sweeps: every verdict engine and property check over enumerable data.

#pragma once

#include <functional>
#include <string>
#include <utility>

#include "rzcomb/fibers.hpp"

namespace rzcomb {

struct CorpusEntry {
  std::string label;
  std::shared_ptr<const CoxeterDatum> datum;
  std::shared_ptr<const AdmissibleSet> adm;
};

// Irreducible data: A_{n-1} (n <= max_a_nodes), B/C/D of rank <= 4, every
// diagram automorphism, every dominant non-central mu with <mu, 2rho> <= max_two_rho.
std::vector<CorpusEntry> irreducible_corpus(int max_two_rho = 10, int max_a_nodes = 6);
// Restriction-of-scalars data (one non-central factor) and products with two
// non-central factors (Hilbert-Blumenthal, Stamm and non-examples).
std::vector<CorpusEntry> restriction_corpus();

class CheckTally {
 public:
  void pass() { ++instances_; }
  void fail(std::string what);
  void check(bool ok, const std::function<std::string()>& what) { ok ? pass() : fail(what()); }
  std::size_t instances() const { return instances_; }
  std::size_t failures() const { return failures_; }
  const std::vector<std::string>& examples() const { return examples_; }
  bool ok() const { return failures_ == 0; }
  void merge(const CheckTally& other);

 private:
  std::size_t instances_ = 0, failures_ = 0;
  std::vector<std::string> examples_;
};

struct SweepResult {
  // Classification agreement.
  CheckTally zero_dim, discrete_fiber, max_dim, equi_max;
  // Q-Rig comparison.
  CheckTally qrig_containment, qrig_equality;
  // Property suites.
  CheckTally s_tau, full_support, ss_tau, translation_crit, w_fin_routes, w_fin_quasisplit, dim_bound, extreme_elements,
      crit_vs_support;
  CheckTally fibers;
  CheckTally collapse;
  std::size_t data = 0, levels = 0, level_pairs = 0;

  void merge(const SweepResult& other);
  bool ok() const;
  // (name, tally) in a fixed order, for reports.
  std::vector<std::pair<std::string, const CheckTally*>> tallies() const;
};

struct SweepOptions {
  int max_two_rho = 10;
  int max_a_nodes = 6;
  bool irreducible = true;
  bool restriction = true;
  // 0 picks RZCOMB_THREADS or the hardware concurrency.
  int threads = 0;
  std::function<void(const std::string&)> progress;
};

SweepResult run_sweep(const SweepOptions& opts = {});

// Per-entry workers, exposed for tests.
void sweep_irreducible_entry(const CorpusEntry& e, SweepResult& out);
void sweep_restriction_entry(const CorpusEntry& e, SweepResult& out);

// Moving elements between a datum with one non-central factor and its collapse.
Element project_to_component(const AffineWeylGroup& g, int component, const Element& x);
Element embed_component(const AffineWeylGroup& g, int component, const Element& x);

}  // namespace rzcomb
