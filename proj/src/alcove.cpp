#include "rzcomb/alcove.hpp"

#include <algorithm>
#include <deque>
#include <unordered_set>

namespace rzcomb {

std::vector<AlcoveVertex> base_alcove_vertices(const AffineWeylGroup& g, int component) {
  const auto& comp = g.component(component);
  std::vector<AlcoveVertex> out;
  for (int j = 0; j < comp.num_nodes(); ++j)
    out.push_back({component, j, comp.scaled_vertex(j), comp.vertex_scale(), comp.is_special_node(j)});
  return out;
}

bool CriticalIndexSet::empty() const {
  return std::any_of(per_component.begin(), per_component.end(), [](const auto& v) { return v.empty(); });
}

std::size_t CriticalIndexSet::count() const {
  std::size_t n = 1;
  for (const auto& v : per_component) n *= v.size();
  return n;
}

CriticalIndexSet critical_indices(const AffineWeylGroup& g, const Element& x) {
  CriticalIndexSet out;
  for (int c = 0; c < g.num_components(); ++c) {
    const auto& comp = g.component(c);
    auto verts = base_alcove_vertices(g, c);
    std::vector<AlcoveVertex> common;
    for (const auto& v : verts) {
      std::vector<long long> p(v.scaled.begin(), v.scaled.end()), img(comp.rank());
      comp.apply_scaled(x.v.data() + g.block_offset(c), p.data(), v.scale, img.data());
      for (const auto& u : verts)
        if (std::equal(u.scaled.begin(), u.scaled.end(), img.begin(), [](int a, long long b) { return a == b; })) {
          common.push_back(u);
          break;
        }
    }
    std::sort(common.begin(), common.end(), [](const auto& a, const auto& b) { return a.node < b.node; });
    out.per_component.push_back(std::move(common));
  }
  return out;
}

bool is_quasi_rigid(const AffineWeylGroup& g, const Element& x) { return g.is_finite_parabolic(g.support(x)); }

bool in_rig(const AffineWeylGroup& g, const Element& x, const NodePerm& theta) {
  return g.is_finite_parabolic(twisted_support(g, x, theta));
}

std::size_t stable_critical_count(const CoxeterDatum& d, const Element& x) {
  const AffineWeylGroup& g = d.group();
  CriticalIndexSet crit = critical_indices(g, x);
  if (crit.empty()) return 0;
  std::size_t hits = 0;
  std::vector<std::size_t> pick(g.num_components(), 0);
  for (;;) {
    NodeMask m = 0;
    for (int c = 0; c < g.num_components(); ++c) m |= bit(g.node_offset(c) + crit.per_component[c][pick[c]].node);
    if (apply_perm(d.ad_tau_sigma(), m) == m) ++hits;
    int c = 0;
    while (c < g.num_components() && ++pick[c] == crit.per_component[c].size()) pick[c++] = 0;
    if (c == g.num_components()) break;
  }
  return hits;
}

std::vector<Element> q_rig_window(const AffineWeylGroup& g, const Element& tau, int max_len, NodeMask k) {
  // Every prefix of a quasi-rigid element is quasi-rigid, so breadth-first
  // growth by left multiplication reaches the whole window.
  std::vector<Element> layer{tau}, out;
  std::unordered_set<Element, ElementHash> seen{tau};
  for (int len = 0; len <= max_len; ++len) {
    std::vector<Element> next;
    for (const auto& x : layer) {
      if (g.is_K_minimal(x, k)) out.push_back(x);
      if (len == max_len) continue;
      for (int s = 0; s < g.num_nodes(); ++s) {
        if (g.left_descent(x, s)) continue;
        Element y = g.lmul(s, x);
        if (!seen.insert(y).second) continue;
        if (is_quasi_rigid(g, y)) next.push_back(std::move(y));
      }
    }
    layer = std::move(next);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<IntVec> w_mu_K_fin(const AdmissibleSet& adm, NodeMask k, const CoxeterDatum& d) {
  const AffineWeylGroup& g = d.group();
  std::vector<IntVec> out;
  for (std::size_t i = 0; i < adm.orbit().size(); ++i) {
    const Element& t = adm.translations()[i];
    if (!g.is_K_minimal(t, k)) continue;
    if (g.is_finite_parabolic(sigma_support(d, t))) out.push_back(adm.orbit()[i]);
  }
  return out;
}

std::vector<IntVec> w_mu_K_fin_by_critical(const AdmissibleSet& adm, NodeMask k, const CoxeterDatum& d) {
  const AffineWeylGroup& g = d.group();
  std::vector<IntVec> out;
  for (std::size_t i = 0; i < adm.orbit().size(); ++i) {
    const Element& t = adm.translations()[i];
    if (!g.is_K_minimal(t, k)) continue;
    if (stable_critical_count(d, t) > 0) out.push_back(adm.orbit()[i]);
  }
  return out;
}

bool is_J_quasisplit(const CoxeterDatum& d) {
  const AffineWeylGroup& g = d.group();
  std::vector<std::vector<int>> special(g.num_components());
  for (int c = 0; c < g.num_components(); ++c)
    for (int j = 0; j < g.component(c).num_nodes(); ++j)
      if (g.component(c).is_special_node(j)) special[c].push_back(g.node_offset(c) + j);
  std::vector<std::size_t> pick(g.num_components(), 0);
  for (;;) {
    NodeMask m = 0;
    for (int c = 0; c < g.num_components(); ++c) m |= bit(special[c][pick[c]]);
    if (apply_perm(d.ad_tau_sigma(), m) == m) return true;
    int c = 0;
    while (c < g.num_components() && ++pick[c] == special[c].size()) pick[c++] = 0;
    if (c == g.num_components()) return false;
  }
}

int mu_two_rho(const CoxeterDatum& d) { return d.two_rho(); }

bool is_minuscule(const AffineWeylGroup& g, const IntVec& flat) {
  for (int c = 0; c < g.num_components(); ++c) {
    const auto& comp = g.component(c);
    IntVec part(flat.begin() + g.coweight_offset(c), flat.begin() + g.coweight_offset(c) + comp.rank());
    if (!comp.is_minuscule(part)) return false;
  }
  return true;
}

bool is_central(const IntVec& flat) {
  return std::all_of(flat.begin(), flat.end(), [](int x) { return x == 0; });
}

}  // namespace rzcomb
