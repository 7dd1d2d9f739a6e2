// Coxeter data over F: components, the diagram automorphism sigma, mu, and
// restriction of scalars.

#pragma once

#include <optional>

#include "rzcomb/weyl_core.hpp"

namespace rzcomb {

// Named automorphisms of a single component, as node permutations.
NodePerm sigma_identity(const AffineDynkinComponent& c);
NodePerm sigma_varsigma0(const AffineDynkinComponent& c);  // finite diagram flip, fixes s0
NodePerm sigma_rho(const AffineDynkinComponent& c, int k);  // type A rotation s_i -> s_{i+k}
NodePerm sigma_ad_tau(const AffineDynkinComponent& c, int i);
// Parses "id", "varsigma0", "rho<k>", "ad_tau<i>" and products "a*b" (b applied first).
NodePerm parse_sigma(const AffineDynkinComponent& c, std::string_view spec);
bool is_component_automorphism(const AffineDynkinComponent& c, const NodePerm& p);

class CoxeterDatum {
 public:
  // mu holds one coweight per component (fundamental-coweight coordinates).
  CoxeterDatum(std::shared_ptr<const AffineWeylGroup> group, NodePerm sigma, std::vector<IntVec> mu);

  static CoxeterDatum irreducible(Family family, int rank, const NodePerm& sigma, const IntVec& mu);

  const AffineWeylGroup& group() const { return *group_; }
  std::shared_ptr<const AffineWeylGroup> group_ptr() const { return group_; }
  const NodePerm& sigma() const { return sigma_; }
  const std::vector<IntVec>& mu() const { return mu_; }
  const std::vector<IntVec>& mu_dominant() const { return mu_dom_; }
  IntVec mu_dominant_flat() const;
  const IntVec& component_permutation() const { return comp_perm_; }
  const Element& tau() const { return tau_; }
  const IntVec& tau_indices() const { return tau_idx_; }
  const NodePerm& ad_tau() const { return ad_tau_; }
  // Ad(tau) o sigma on nodes.
  const NodePerm& ad_tau_sigma() const { return ad_tau_sigma_; }
  bool is_irreducible() const { return group_->num_components() == 1; }
  bool component_central(int c) const;
  int non_central_count() const;
  int two_rho() const;
  bool is_sigma_stable(NodeMask k) const { return apply_perm(sigma_, k) == k; }
  // Throws unless K is sigma-stable with W_K finite.
  void check_level(NodeMask k, std::string_view what) const;
  std::vector<NodeMask> sigma_stable_levels() const;
  std::string summary() const;
  std::string format_mask(NodeMask k) const;

  // sigma applied letterwise to a word.
  std::vector<int> sigma_word(const std::vector<int>& letters) const;

 private:
  std::shared_ptr<const AffineWeylGroup> group_;
  NodePerm sigma_;
  std::vector<IntVec> mu_, mu_dom_;
  IntVec comp_perm_;
  Element tau_;
  IntVec tau_idx_;
  NodePerm ad_tau_, ad_tau_sigma_;
};

// Smallest Ad(tau(w)) o sigma-stable set containing supp(w).
NodeMask sigma_support(const CoxeterDatum& d, const Element& w);
// Same closure for an arbitrary twist theta in place of sigma.
NodeMask twisted_support(const AffineWeylGroup& g, const Element& w, const NodePerm& theta);
// Whether v -> w(sigma(v)) fixes a point of the closed base alcove.
bool fixes_point_of_closed_alcove(const CoxeterDatum& d, const Element& w);

CoxeterDatum restrict_scalars(const AffineDynkinComponent& c, const NodePerm& sigma_d, int d,
                              const std::vector<IntVec>& mus);

struct CollapsedDatum {
  CoxeterDatum inner;
  int source_component;  // the non-central component of the original datum
  int degree;
  IntVec mu_prime;
  NodeMask level;  // K_1 in the inner labeling
};

// Transports a coweight through a diagram isomorphism between two copies of
// the same component (perm maps local nodes of the source to local nodes of
// the target); the result is dominant.
IntVec transport_coweight(const AffineDynkinComponent& c, const NodePerm& perm, const IntVec& mu);

CollapsedDatum collapse_restriction(const CoxeterDatum& d, NodeMask k);
// The local node map from component `from` to component sigma^steps(from).
NodePerm sigma_power_local(const CoxeterDatum& d, int from, int steps);

}  // namespace rzcomb
