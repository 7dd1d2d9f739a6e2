// Admissible sets Adm(mu), the refinements ^K Adm(mu) and ^K Adm(mu)_0,
// the order <=_{K,sigma} and maximal elements.

#pragma once

#include "rzcomb/frobenius.hpp"

namespace rzcomb {

struct Budget {
  int max_two_rho = 12;
  std::size_t max_adm = 2'000'000;
  friend bool operator==(const Budget&, const Budget&) = default;
};

class AdmissibleSet {
 public:
  // Depends on the group and mu only; sigma enters through the refinements.
  static AdmissibleSet enumerate(const CoxeterDatum& d, const Budget& budget = {});

  const AffineWeylGroup& group() const { return *group_; }
  std::size_t size() const { return elems_.size(); }
  // Sorted by (length, canonical form).
  const std::vector<Element>& elements() const { return elems_; }
  int length(std::size_t i) const { return len_[i]; }
  // supp(w tau^-1) as a node mask.
  NodeMask support(std::size_t i) const { return supp_[i]; }
  bool contains(const Element& w) const { return index_.count(w) != 0; }
  long index_of(const Element& w) const;
  const Element& tau() const { return tau_; }
  int two_rho() const { return two_rho_; }
  // W0(mu) flattened over components, sorted; translations()[i] = t^{orbit()[i]}.
  const std::vector<IntVec>& orbit() const { return orbit_; }
  const std::vector<Element>& translations() const { return trans_; }

 private:
  std::shared_ptr<const AffineWeylGroup> group_;
  std::vector<Element> elems_;
  std::vector<int> len_;
  std::vector<NodeMask> supp_;
  std::unordered_map<Element, long, ElementHash> index_;
  Element tau_;
  int two_rho_{0};
  std::vector<IntVec> orbit_;
  std::vector<Element> trans_;
};

// Product of the component W0-orbits of the dominant coweights, flattened.
std::vector<IntVec> weyl_orbit_flat(const AffineWeylGroup& g, const std::vector<IntVec>& mu);

// Membership by Bruhat comparison with the W0(mu) translations, without enumerating Adm.
bool is_admissible(const CoxeterDatum& d, const Element& x);

// Index lists into adm.elements().
std::vector<int> k_admissible(const AdmissibleSet& adm, NodeMask k);
std::vector<int> k_admissible_zero(const AdmissibleSet& adm, NodeMask k, const CoxeterDatum& d);

// Elements of a finite parabolic subgroup W_K with a breadth-first word tree.
class ParabolicSubgroup {
 public:
  ParabolicSubgroup(const AffineWeylGroup& g, NodeMask k);
  std::size_t size() const { return elems_.size(); }
  const std::vector<Element>& elements() const { return elems_; }
  int parent(std::size_t i) const { return parent_[i]; }
  int letter(std::size_t i) const { return letter_[i]; }  // elems[i] = letter * elems[parent]
  std::vector<int> word(std::size_t i) const;
  NodeMask mask() const { return mask_; }

 private:
  NodeMask mask_;
  std::vector<Element> elems_;
  std::vector<int> parent_, letter_;
};

// All x w sigma(x)^-1 for x in W_K, deduplicated.
std::vector<Element> sigma_conjugates(const CoxeterDatum& d, const ParabolicSubgroup& wk, const Element& w);
bool preceq_K_sigma(const CoxeterDatum& d, const ParabolicSubgroup& wk, const Element& w_prime, const Element& w);
// Maximal elements of `subset` under <=_{K,sigma}; sorted by (length desc, word lex).
std::vector<Element> maximal_elements(const CoxeterDatum& d, const std::vector<Element>& subset, NodeMask k);
// Deterministic report ordering: length descending, then word.
void sort_for_report(const AffineWeylGroup& g, std::vector<Element>& elems);

}  // namespace rzcomb
