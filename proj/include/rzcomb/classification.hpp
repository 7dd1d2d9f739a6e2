// Verdict engines for the classification theorems. Each verdict is computed
// twice: once from the combinatorics of the admissible set, once from the
// structural (table-driven) description; the report records both.

#pragma once

#include "rzcomb/alcove.hpp"

namespace rzcomb {

// Canonical representative of (component, sigma, mu) under diagram relabeling.
struct CanonicalForm {
  Family family;
  int rank;
  NodePerm sigma;
  IntVec mu;
  friend bool operator==(const CanonicalForm&, const CanonicalForm&) = default;
  friend auto operator<=>(const CanonicalForm&, const CanonicalForm&) = default;
};

CanonicalForm canonical_form(const AffineDynkinComponent& c, const NodePerm& sigma, const IntVec& mu);

struct TableRow {
  std::string name;  // e.g. "(A3, rho2, w2)"
  NodePerm sigma;
  IntVec mu;
};

// Rows of the fully Hodge-Newton decomposable table that live on this component.
std::vector<TableRow> fully_hn_rows(const AffineDynkinComponent& c);
// The matching row, if any, up to isomorphism.
std::optional<TableRow> match_fully_hn_row(const AffineDynkinComponent& c, const NodePerm& sigma, const IntVec& mu);

enum class HnShape { None, SingleComponent, HilbertBlumenthal };

struct FullyHnMatch {
  HnShape shape = HnShape::None;
  std::string row;         // matched row, for SingleComponent
  int source_component = -1;
  bool fully_hn() const { return shape != HnShape::None; }
};

// Throws on central mu.
FullyHnMatch fully_hn_lookup(const CoxeterDatum& d);

// The local automorphism sigma^d of the first non-central component together
// with its coweight; only valid with exactly one non-central component.
struct LocalShape {
  int component;
  NodePerm sigma_d;
  IntVec mu;
};
std::optional<LocalShape> local_shape(const CoxeterDatum& d);

// Structural patterns used by several theorems.
bool is_extended_lubin_tate(const CoxeterDatum& d);
bool is_extended_exotic_unitary(const CoxeterDatum& d);  // (A_{n-1}, varsigma0, w1), n >= 3
bool is_hilbert_blumenthal(const CoxeterDatum& d);

struct Witness {
  std::string kind;
  std::vector<Element> elements;
  std::vector<IntVec> coweights;
  NodeMask nodes = 0;
  std::string note;
};

struct VerdictReport {
  std::string predicate;
  std::string datum;
  NodeMask level = 0, level_prime = 0;
  bool defined = true;  // false when the precondition fails; see reason
  std::string reason;
  bool verdict = false;     // from the combinatorics
  bool structural = false;  // from the tables / closed-form criteria
  Witness witness;
  bool agree() const { return !defined || verdict == structural; }
};

// Shared per-datum cache so the sweep enumerates each admissible set once.
class VerdictContext {
 public:
  VerdictContext(const CoxeterDatum& d, std::shared_ptr<const AdmissibleSet> adm);
  const CoxeterDatum& datum() const { return d_; }
  const AdmissibleSet& adm() const { return *adm_; }
  const std::vector<int>& k_adm(NodeMask k);
  const std::vector<int>& k_adm_zero(NodeMask k);
  const FullyHnMatch& hn() const { return hn_; }

 private:
  const CoxeterDatum& d_;
  std::shared_ptr<const AdmissibleSet> adm_;
  FullyHnMatch hn_;
  std::unordered_map<NodeMask, std::vector<int>> k_adm_, k_adm0_;
};

VerdictReport zero_dim_verdict(VerdictContext& ctx, NodeMask k);
VerdictReport discrete_fiber_verdict(VerdictContext& ctx, NodeMask k, NodeMask k_prime);
VerdictReport max_dim_verdict(VerdictContext& ctx, NodeMask k);
VerdictReport equi_max_verdict(VerdictContext& ctx, NodeMask k);

struct QRigReport {
  VerdictReport containment;  // verdict: ^K Adm in Q-Rig; structural: (A, w1) shape
  bool equality_checked = false;
  bool equality = false;
  std::vector<Element> only_in_qrig;  // window elements missing from ^K Adm
};
QRigReport drinfeld_qrig_verdict(VerdictContext& ctx, NodeMask k);

// Condition on (K, K') for the exotic unitary case, in the labeling of the
// collapsed component: every s in K' \ K is sigma_d-fixed and Ad(tau)(s) is not in K.
bool exotic_level_condition(const CoxeterDatum& inner, NodeMask k1, NodeMask k1_prime);

}  // namespace rzcomb
