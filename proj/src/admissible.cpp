#include "rzcomb/admissible.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_set>

namespace rzcomb {

std::vector<IntVec> weyl_orbit_flat(const AffineWeylGroup& g, const std::vector<IntVec>& mu) {
  std::vector<IntVec> acc{IntVec{}};
  for (int c = 0; c < g.num_components(); ++c) {
    auto orb = g.component(c).weyl_orbit(mu[c]);
    std::vector<IntVec> next;
    for (const auto& prefix : acc)
      for (const auto& o : orb) {
        IntVec v = prefix;
        v.insert(v.end(), o.begin(), o.end());
        next.push_back(std::move(v));
      }
    acc = std::move(next);
  }
  std::sort(acc.begin(), acc.end());
  return acc;
}

AdmissibleSet AdmissibleSet::enumerate(const CoxeterDatum& d, const Budget& budget) {
  AdmissibleSet a;
  a.group_ = d.group_ptr();
  const AffineWeylGroup& g = *a.group_;
  a.two_rho_ = d.two_rho();
  if (a.two_rho_ > budget.max_two_rho)
    throw BudgetExceeded("<mu, 2rho> = " + std::to_string(a.two_rho_) + " exceeds the budget " +
                         std::to_string(budget.max_two_rho));
  a.tau_ = d.tau();
  a.orbit_ = weyl_orbit_flat(g, d.mu_dominant());
  std::unordered_set<Element, ElementHash> all;
  for (const IntVec& lam : a.orbit_) {
    Element t = g.translation(lam);
    a.trans_.push_back(t);
    ReducedWord rw = g.reduced_word(t);
    if (rw.tail != a.tau_) throw InvariantBreach("translation outside the coset of tau");
    // Subword closure: down(s v) = down(v) + s down(v) when s v > v.
    std::vector<Element> down{rw.tail};
    std::unordered_set<Element, ElementHash> seen{rw.tail};
    for (auto it = rw.letters.rbegin(); it != rw.letters.rend(); ++it) {
      const std::size_t m = down.size();
      for (std::size_t j = 0; j < m; ++j) {
        Element x = g.lmul(*it, down[j]);
        if (seen.insert(x).second) down.push_back(std::move(x));
      }
    }
    for (auto& x : down) all.insert(std::move(x));
    if (all.size() > budget.max_adm)
      throw BudgetExceeded("admissible set exceeds " + std::to_string(budget.max_adm) + " elements");
  }
  std::vector<std::pair<int, Element>> keyed;
  keyed.reserve(all.size());
  for (const auto& x : all) keyed.emplace_back(g.length(x), x);
  std::sort(keyed.begin(), keyed.end());
  for (auto& [l, x] : keyed) {
    a.len_.push_back(l);
    a.supp_.push_back(g.support(x));
    a.index_.emplace(x, static_cast<long>(a.elems_.size()));
    a.elems_.push_back(std::move(x));
  }
  return a;
}

long AdmissibleSet::index_of(const Element& w) const {
  auto it = index_.find(w);
  return it == index_.end() ? -1 : it->second;
}

std::vector<int> k_admissible(const AdmissibleSet& adm, NodeMask k) {
  std::vector<int> out;
  for (std::size_t i = 0; i < adm.size(); ++i)
    if (adm.group().is_K_minimal(adm.elements()[i], k)) out.push_back(static_cast<int>(i));
  return out;
}

bool is_admissible(const CoxeterDatum& d, const Element& x) {
  const AffineWeylGroup& g = d.group();
  for (const IntVec& lam : weyl_orbit_flat(g, d.mu_dominant()))
    if (g.bruhat_leq(x, g.translation(lam))) return true;
  return false;
}

std::vector<int> k_admissible_zero(const AdmissibleSet& adm, NodeMask k, const CoxeterDatum& d) {
  std::vector<int> out;
  for (int i : k_admissible(adm, k))
    if (d.group().is_finite_parabolic(perm_closure(d.ad_tau_sigma(), adm.support(i)))) out.push_back(i);
  return out;
}

ParabolicSubgroup::ParabolicSubgroup(const AffineWeylGroup& g, NodeMask k) : mask_(k) {
  if (!g.is_finite_parabolic(k)) throw RzError("parabolic subgroup is infinite");
  std::unordered_map<Element, int, ElementHash> seen;
  elems_.push_back(g.identity());
  parent_.push_back(-1);
  letter_.push_back(-1);
  seen.emplace(elems_[0], 0);
  for (std::size_t i = 0; i < elems_.size(); ++i)
    for (int s = 0; s < g.num_nodes(); ++s) {
      if (!mask_has(k, s)) continue;
      Element x = g.lmul(s, elems_[i]);
      if (seen.count(x)) continue;
      seen.emplace(x, static_cast<int>(elems_.size()));
      elems_.push_back(std::move(x));
      parent_.push_back(static_cast<int>(i));
      letter_.push_back(s);
    }
}

std::vector<int> ParabolicSubgroup::word(std::size_t i) const {
  std::vector<int> w;
  for (long j = static_cast<long>(i); parent_[j] >= 0; j = parent_[j]) w.push_back(letter_[j]);
  return w;
}

std::vector<Element> sigma_conjugates(const CoxeterDatum& d, const ParabolicSubgroup& wk, const Element& w) {
  const AffineWeylGroup& g = d.group();
  std::vector<Element> conj(wk.size());
  conj[0] = w;
  for (std::size_t i = 1; i < wk.size(); ++i) {
    int s = wk.letter(i);
    conj[i] = g.rmul(g.lmul(s, conj[wk.parent(i)]), d.sigma()[s]);
  }
  std::sort(conj.begin(), conj.end());
  conj.erase(std::unique(conj.begin(), conj.end()), conj.end());
  return conj;
}

bool preceq_K_sigma(const CoxeterDatum& d, const ParabolicSubgroup& wk, const Element& w_prime, const Element& w) {
  const AffineWeylGroup& g = d.group();
  int lw = g.length(w);
  for (const Element& c : sigma_conjugates(d, wk, w_prime))
    if (g.length(c) <= lw && g.bruhat_leq(c, w)) return true;
  return false;
}

void sort_for_report(const AffineWeylGroup& g, std::vector<Element>& elems) {
  std::vector<std::tuple<int, std::string, Element>> keyed;
  for (auto& e : elems) keyed.emplace_back(-g.length(e), g.format(e), std::move(e));
  std::sort(keyed.begin(), keyed.end());
  elems.clear();
  for (auto& k : keyed) elems.push_back(std::move(std::get<2>(k)));
}

std::vector<Element> maximal_elements(const CoxeterDatum& d, const std::vector<Element>& subset, NodeMask k) {
  const AffineWeylGroup& g = d.group();
  ParabolicSubgroup wk(g, k);
  BruhatCache cache(g);
  std::vector<int> len;
  for (const auto& e : subset) {
    if (!g.is_K_minimal(e, k)) throw RzError("maximal_elements: element is not K-minimal");
    len.push_back(g.length(e));
  }
  std::vector<Element> out;
  for (std::size_t i = 0; i < subset.size(); ++i) {
    auto conj = sigma_conjugates(d, wk, subset[i]);
    bool below = false;
    for (std::size_t j = 0; j < subset.size() && !below; ++j) {
      if (j == i || len[j] < len[i]) continue;
      for (const auto& c : conj)
        if (g.length(c) <= len[j] && cache.leq(c, subset[j])) {
          below = true;
          break;
        }
    }
    if (!below) out.push_back(subset[i]);
  }
  sort_for_report(g, out);
  return out;
}

}  // namespace rzcomb
