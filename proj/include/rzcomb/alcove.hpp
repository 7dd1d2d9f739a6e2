// Alcove geometry: vertices of the base alcove, critical indices, quasi-rigid
// elements, W(mu)_{K,fin} and quasi-splitness.

#pragma once

#include "rzcomb/admissible.hpp"

namespace rzcomb {

struct AlcoveVertex {
  int component;
  int node;      // local node index; 0 is the origin
  IntVec scaled; // coordinates times `scale`
  int scale;
  bool special;
  friend bool operator==(const AlcoveVertex&, const AlcoveVertex&) = default;
};

std::vector<AlcoveVertex> base_alcove_vertices(const AffineWeylGroup& g, int component);

// Crit(x) per component; the full set is the product of the lists.
struct CriticalIndexSet {
  std::vector<std::vector<AlcoveVertex>> per_component;
  bool empty() const;
  std::size_t count() const;
};

CriticalIndexSet critical_indices(const AffineWeylGroup& g, const Element& x);
// W_{supp(x tau^-1)} finite.
bool is_quasi_rigid(const AffineWeylGroup& g, const Element& x);
// W_{supp_theta(x)} finite.
bool in_rig(const AffineWeylGroup& g, const Element& x, const NodePerm& theta);
// Number of critical indices (one vertex per component) whose node set is Ad(tau) o sigma-stable.
std::size_t stable_critical_count(const CoxeterDatum& d, const Element& x);

// {x in W_a tau : l(x) <= max_len, Crit(x) nonempty, x K-minimal}.
std::vector<Element> q_rig_window(const AffineWeylGroup& g, const Element& tau, int max_len, NodeMask k);

// W(mu)_{K,fin} through finite sigma-support, and through stable critical indices.
std::vector<IntVec> w_mu_K_fin(const AdmissibleSet& adm, NodeMask k, const CoxeterDatum& d);
std::vector<IntVec> w_mu_K_fin_by_critical(const AdmissibleSet& adm, NodeMask k, const CoxeterDatum& d);

bool is_J_quasisplit(const CoxeterDatum& d);
int mu_two_rho(const CoxeterDatum& d);
bool is_minuscule(const AffineWeylGroup& g, const IntVec& flat);
bool is_central(const IntVec& flat);

}  // namespace rzcomb
