#include "rzcomb/classification.hpp"

#include <algorithm>
#include <functional>
#include <unordered_set>

namespace rzcomb {

CanonicalForm canonical_form(const AffineDynkinComponent& c, const NodePerm& sigma, const IntVec& mu) {
  std::optional<CanonicalForm> best;
  for (const NodePerm& phi : c.diagram_automorphisms()) {
    CanonicalForm f{c.family(), c.rank(), compose_perm(compose_perm(phi, sigma), invert_perm(phi)),
                    transport_coweight(c, phi, c.dominant(mu))};
    if (!best || f < *best) best = std::move(f);
  }
  return *best;
}

namespace {

IntVec fundamental(const AffineDynkinComponent& c, int i) {
  IntVec v(c.rank(), 0);
  v[i - 1] += 1;
  return v;
}

IntVec fundamental_sum(const AffineDynkinComponent& c, int i, int j) {
  IntVec v = fundamental(c, i);
  v[j - 1] += 1;
  return v;
}

}  // namespace

std::vector<TableRow> fully_hn_rows(const AffineDynkinComponent& c) {
  std::vector<TableRow> rows;
  const int r = c.rank();
  auto add = [&](std::string name, NodePerm s, IntVec mu) { rows.push_back({std::move(name), std::move(s), std::move(mu)}); };
  switch (c.family()) {
    case Family::A: {
      const int n = r + 1;
      add("(A, id, w1)", sigma_identity(c), fundamental(c, 1));
      add("(A, rho_{n-1}, w1)", sigma_rho(c, n - 1), fundamental(c, 1));
      add("(A, varsigma0, w1)", sigma_varsigma0(c), fundamental(c, 1));
      if (n % 2 == 0) add("(A, rho1 varsigma0, w1)", compose_perm(sigma_rho(c, 1), sigma_varsigma0(c)), fundamental(c, 1));
      add("(A, id, w1 + w_{n-1})", sigma_identity(c), fundamental_sum(c, 1, r));
      if (n == 4) {
        add("(A3, id, w2)", sigma_identity(c), fundamental(c, 2));
        add("(A3, varsigma0, w2)", sigma_varsigma0(c), fundamental(c, 2));
        add("(A3, rho2, w2)", sigma_rho(c, 2), fundamental(c, 2));
      }
      break;
    }
    case Family::B:
      add("(B, id, w1)", sigma_identity(c), fundamental(c, 1));
      add("(B, Ad(tau1), w1)", sigma_ad_tau(c, 1), fundamental(c, 1));
      break;
    case Family::C:
      add("(C, id, w1)", sigma_identity(c), fundamental(c, 1));
      if (r == 2) {
        add("(C2, id, w2)", sigma_identity(c), fundamental(c, 2));
        add("(C2, Ad(tau2), w2)", sigma_ad_tau(c, 2), fundamental(c, 2));
      }
      break;
    case Family::D:
      add("(D, id, w1)", sigma_identity(c), fundamental(c, 1));
      add("(D, varsigma0, w1)", sigma_varsigma0(c), fundamental(c, 1));
      break;
  }
  return rows;
}

std::optional<TableRow> match_fully_hn_row(const AffineDynkinComponent& c, const NodePerm& sigma, const IntVec& mu) {
  const CanonicalForm f = canonical_form(c, sigma, mu);
  for (auto& row : fully_hn_rows(c))
    if (canonical_form(c, row.sigma, row.mu) == f) return row;
  return std::nullopt;
}

std::optional<LocalShape> local_shape(const CoxeterDatum& d) {
  if (d.non_central_count() != 1) return std::nullopt;
  const auto& g = d.group();
  int src = 0;
  while (d.component_central(src)) ++src;
  return LocalShape{src, sigma_power_local(d, src, g.num_components()), d.mu_dominant()[src]};
}

namespace {

bool local_matches(const CoxeterDatum& d, Family fam, const std::function<NodePerm(const AffineDynkinComponent&)>& sig,
                   const std::function<IntVec(const AffineDynkinComponent&)>& mu) {
  auto shape = local_shape(d);
  if (!shape) return false;
  const auto& c = d.group().component(shape->component);
  if (c.family() != fam) return false;
  return canonical_form(c, shape->sigma_d, shape->mu) == canonical_form(c, sig(c), mu(c));
}

auto w1 = [](const AffineDynkinComponent& c) { return fundamental(c, 1); };

}  // namespace

bool is_extended_lubin_tate(const CoxeterDatum& d) { return local_matches(d, Family::A, sigma_identity, w1); }

bool is_extended_exotic_unitary(const CoxeterDatum& d) {
  auto shape = local_shape(d);
  if (!shape || d.group().component(shape->component).num_nodes() < 3) return false;
  return local_matches(d, Family::A, sigma_varsigma0, w1);
}

bool is_hilbert_blumenthal(const CoxeterDatum& d) {
  const auto& g = d.group();
  if (d.non_central_count() != 2 || g.component(0).family() != Family::A) return false;
  std::vector<int> nc;
  for (int c = 0; c < g.num_components(); ++c)
    if (!d.component_central(c)) nc.push_back(c);
  const auto& comp = g.component(nc[0]);
  if (sigma_power_local(d, nc[0], g.num_components()) != sigma_identity(comp)) return false;
  int steps = 0;
  for (int c = nc[0]; c != nc[1]; c = d.component_permutation()[c]) ++steps;
  // mu of the second component read in the labeling of the first.
  IntVec other = transport_coweight(comp, invert_perm(sigma_power_local(d, nc[0], steps)), d.mu_dominant()[nc[1]]);
  const IntVec a = fundamental(comp, 1), b = fundamental(comp, comp.rank());
  const IntVec& first = d.mu_dominant()[nc[0]];
  return (first == a && other == b) || (first == b && other == a);
}

FullyHnMatch fully_hn_lookup(const CoxeterDatum& d) {
  if (d.non_central_count() == 0) throw RzError("fully HN lookup needs a non-central mu");
  FullyHnMatch m;
  if (auto shape = local_shape(d)) {
    const auto& c = d.group().component(shape->component);
    if (auto row = match_fully_hn_row(c, shape->sigma_d, shape->mu)) {
      m.shape = HnShape::SingleComponent;
      m.row = row->name;
      m.source_component = shape->component;
    }
  } else if (is_hilbert_blumenthal(d)) {
    m.shape = HnShape::HilbertBlumenthal;
    m.row = "Hilbert-Blumenthal";
  }
  return m;
}

bool exotic_level_condition(const CoxeterDatum& inner, NodeMask k1, NodeMask k1_prime) {
  for (int s = 0; s < inner.group().num_nodes(); ++s) {
    if (!mask_has(k1_prime, s) || mask_has(k1, s)) continue;
    if (inner.sigma()[s] != s) return false;
    if (mask_has(k1, inner.ad_tau()[s])) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------

VerdictContext::VerdictContext(const CoxeterDatum& d, std::shared_ptr<const AdmissibleSet> adm)
    : d_(d), adm_(std::move(adm)), hn_(fully_hn_lookup(d)) {}

const std::vector<int>& VerdictContext::k_adm(NodeMask k) {
  auto it = k_adm_.find(k);
  if (it == k_adm_.end()) it = k_adm_.emplace(k, k_admissible(*adm_, k)).first;
  return it->second;
}

const std::vector<int>& VerdictContext::k_adm_zero(NodeMask k) {
  auto it = k_adm0_.find(k);
  if (it == k_adm0_.end()) {
    std::vector<int> out;
    for (int i : k_adm(k))
      if (d_.group().is_finite_parabolic(perm_closure(d_.ad_tau_sigma(), adm_->support(i)))) out.push_back(i);
    it = k_adm0_.emplace(k, std::move(out)).first;
  }
  return it->second;
}

namespace {

VerdictReport start(VerdictContext& ctx, std::string name, NodeMask k, NodeMask kp = 0) {
  VerdictReport r;
  r.predicate = std::move(name);
  r.datum = ctx.datum().summary();
  r.level = k;
  r.level_prime = kp;
  return r;
}

}  // namespace

VerdictReport zero_dim_verdict(VerdictContext& ctx, NodeMask k) {
  const CoxeterDatum& d = ctx.datum();
  d.check_level(k, "K");
  VerdictReport r = start(ctx, "zero_dim", k);
  r.structural = is_extended_lubin_tate(d);
  if (!ctx.hn().fully_hn()) {
    r.defined = false;
    r.reason = "not fully Hodge-Newton decomposable; dimension formula unavailable";
    return r;
  }
  int best = -1, arg = -1;
  for (int i : ctx.k_adm_zero(k))
    if (ctx.adm().length(i) > best) best = ctx.adm().length(i), arg = i;
  r.verdict = best == 0;
  r.witness.kind = "longest element of ^K Adm_0";
  r.witness.elements.push_back(ctx.adm().elements()[arg]);
  r.witness.note = "dim = " + std::to_string(best);
  return r;
}

VerdictReport discrete_fiber_verdict(VerdictContext& ctx, NodeMask k, NodeMask k_prime) {
  const CoxeterDatum& d = ctx.datum();
  const AffineWeylGroup& g = d.group();
  d.check_level(k, "K");
  d.check_level(k_prime, "K'");
  if ((k & ~k_prime) != 0 || k == k_prime) throw RzError("discrete_fiber needs K to be a proper subset of K'");
  VerdictReport r = start(ctx, "discrete_fiber", k, k_prime);

  const NodeMask diff = k_prime & ~k;
  const NodePerm& f = d.ad_tau_sigma();
  const AdmissibleSet& adm = ctx.adm();
  bool positive_fiber = false;
  // s * f^m(s) * tau in Adm, walking f through components where mu is central.
  for (int s = 0; s < g.num_nodes() && !positive_fiber; ++s) {
    if (!mask_has(diff, s)) continue;
    const int home = g.component_of(s);
    int t = s;
    for (int m = 1; m <= g.num_components(); ++m) {
      t = f[t];
      const int c = g.component_of(t);
      if (c != home && d.component_central(c)) continue;
      Element x = g.lmul(s, g.lmul(t, d.tau()));
      if (adm.contains(x)) {
        positive_fiber = true;
        r.witness.kind = m == 1 ? "s tau sigma(s) in Adm" : "s tau sigma^m(s) in Adm";
        r.witness.elements = {x};
        r.witness.nodes = bit(s);
      }
      break;
    }
  }
  if (!positive_fiber) {
    // A stratum w != tau whose twisted support stays inside K' lies in one fiber.
    const NodeMask jmax = perm_interior(f, k_prime);
    for (int i : ctx.k_adm_zero(k)) {
      if (adm.length(i) == 0 || (adm.support(i) & ~jmax) != 0) continue;
      positive_fiber = true;
      r.witness.kind = "stratum inside a single fiber";
      r.witness.elements = {adm.elements()[i]};
      r.witness.nodes = jmax;
      break;
    }
  }
  r.verdict = !positive_fiber;
  if (r.verdict) r.witness.kind = "no positive-dimensional fiber witness";

  if (auto shape = local_shape(d)) {
    if (is_extended_lubin_tate(d)) {
      r.structural = true;
    } else if (is_extended_exotic_unitary(d)) {
      CollapsedDatum lo = collapse_restriction(d, k), hi = collapse_restriction(d, k_prime);
      r.structural = exotic_level_condition(lo.inner, lo.level, hi.level);
    }
  }
  return r;
}

VerdictReport max_dim_verdict(VerdictContext& ctx, NodeMask k) {
  const CoxeterDatum& d = ctx.datum();
  d.check_level(k, "K");
  VerdictReport r = start(ctx, "max_dim", k);
  auto fin = w_mu_K_fin(ctx.adm(), k, d);
  r.verdict = !fin.empty();
  r.witness.kind = "W(mu)_{K,fin}";
  r.witness.coweights = fin;
  for (const auto& lam : fin) r.witness.elements.push_back(d.group().translation(lam));
  if (k == 0)
    r.structural = is_J_quasisplit(d) && is_minuscule(d.group(), d.mu_dominant_flat());
  else
    r.structural = !w_mu_K_fin_by_critical(ctx.adm(), k, d).empty();
  return r;
}

VerdictReport equi_max_verdict(VerdictContext& ctx, NodeMask k) {
  const CoxeterDatum& d = ctx.datum();
  const AffineWeylGroup& g = d.group();
  d.check_level(k, "K");
  VerdictReport r = start(ctx, "equi_max", k);

  if (k == 0) {
    if (auto shape = local_shape(d)) {
      const auto& c = g.component(shape->component);
      if (c.family() == Family::A) {
        const CanonicalForm f = canonical_form(c, shape->sigma_d, shape->mu);
        const int n = c.num_nodes();
        r.structural = f == canonical_form(c, sigma_rho(c, n - 1), fundamental(c, 1)) ||
                       (n == 4 && f == canonical_form(c, sigma_rho(c, 2), fundamental(c, 2)));
      }
    } else {
      r.structural = is_hilbert_blumenthal(d);
    }
  }

  if (!ctx.hn().fully_hn()) {
    r.verdict = false;
    r.reason = "not fully Hodge-Newton decomposable";
    return r;
  }
  auto fin = w_mu_K_fin(ctx.adm(), k, d);
  if (fin.empty()) {
    r.verdict = false;
    r.reason = "W(mu)_{K,fin} is empty";
    return r;
  }
  std::vector<Element> zero;
  for (int i : ctx.k_adm_zero(k)) zero.push_back(ctx.adm().elements()[i]);
  std::vector<Element> maxi = maximal_elements(d, zero, k);
  std::vector<Element> trans;
  for (const auto& lam : fin) trans.push_back(g.translation(lam));
  std::vector<Element> a = maxi, b = trans;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  r.verdict = a == b;
  r.witness.kind = "maximal elements of ^K Adm_0";
  r.witness.elements = maxi;
  r.witness.coweights = fin;
  if (!r.verdict) {
    for (const auto& x : maxi)
      if (!g.is_translation(x)) {
        r.witness.note = "non-translation maximal element " + g.format(x);
        break;
      }
  }
  return r;
}

QRigReport drinfeld_qrig_verdict(VerdictContext& ctx, NodeMask k) {
  const CoxeterDatum& d = ctx.datum();
  const AffineWeylGroup& g = d.group();
  if (!d.is_irreducible()) throw RzError("the Q-Rig comparison needs an irreducible group");
  d.check_level(k, "K");
  QRigReport q;
  VerdictReport& r = q.containment;
  r = start(ctx, "qrig_containment", k);
  const auto& c = g.component(0);
  const IntVec& mu = d.mu_dominant()[0];
  r.structural = c.family() == Family::A && (mu == fundamental(c, 1) || mu == fundamental(c, c.rank()));
  r.verdict = true;
  for (int i : ctx.k_adm(k))
    if (!g.is_finite_parabolic(ctx.adm().support(i))) {
      r.verdict = false;
      r.witness.kind = "element of ^K Adm with infinite support";
      r.witness.elements = {ctx.adm().elements()[i]};
      break;
    }
  if (!r.verdict) return q;
  r.witness.kind = "all of ^K Adm is quasi-rigid";
  std::vector<Element> window = q_rig_window(g, d.tau(), d.two_rho(), k);
  std::unordered_set<Element, ElementHash> kadm;
  for (int i : ctx.k_adm(k)) kadm.insert(ctx.adm().elements()[i]);
  q.equality_checked = true;
  for (const auto& x : window)
    if (!kadm.count(x)) q.only_in_qrig.push_back(x);
  bool covered = true;
  std::unordered_set<Element, ElementHash> win(window.begin(), window.end());
  for (const auto& x : kadm)
    if (!win.count(x)) covered = false;
  q.equality = covered && q.only_in_qrig.empty();
  sort_for_report(g, q.only_in_qrig);
  return q;
}

}  // namespace rzcomb
