#include "rzcomb/fibers.hpp"

#include <algorithm>
#include <boost/math/tools/polynomial.hpp>
#include <map>
#include <set>
#include <unordered_set>

namespace rzcomb {

using BoostPoly = boost::math::tools::polynomial<long long>;

namespace {

BoostPoly to_boost(const std::vector<long long>& c) {
  return c.empty() ? BoostPoly(0LL) : BoostPoly(c.begin(), c.end());
}

std::vector<long long> from_boost(const BoostPoly& p) {
  std::vector<long long> out(p.data().begin(), p.data().end());
  return out;
}

}  // namespace

PointCountPolynomial::PointCountPolynomial(std::vector<long long> coeffs) : c_(std::move(coeffs)) { trim(); }

PointCountPolynomial PointCountPolynomial::constant(long long c) { return PointCountPolynomial({c}); }

PointCountPolynomial PointCountPolynomial::binomial(long long c0, long long c1, int d) {
  std::vector<long long> c(d + 1, 0);
  c[0] += c0;
  c[d] += c1;
  return PointCountPolynomial(std::move(c));
}

void PointCountPolynomial::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

long long PointCountPolynomial::evaluate(long long q) const {
  long long acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * q + *it;
  return acc;
}

PointCountPolynomial PointCountPolynomial::substitute_power(int d) const {
  if (c_.empty()) return {};
  std::vector<long long> out((c_.size() - 1) * d + 1, 0);
  for (std::size_t i = 0; i < c_.size(); ++i) out[i * d] = c_[i];
  return PointCountPolynomial(std::move(out));
}

std::optional<PointCountPolynomial> PointCountPolynomial::divide_exact(const PointCountPolynomial& by) const {
  if (by.c_.empty()) throw RzError("division by the zero polynomial");
  if (c_.empty()) return PointCountPolynomial{};
  if (c_.size() < by.c_.size()) return std::nullopt;
  BoostPoly a = to_boost(c_), b = to_boost(by.c_);
  auto [quot, rem] = boost::math::tools::quotient_remainder(a, b);
  PointCountPolynomial q(from_boost(quot));
  if (q * by != *this) return std::nullopt;
  return q;
}

PointCountPolynomial operator+(const PointCountPolynomial& a, const PointCountPolynomial& b) {
  std::vector<long long> c(std::max(a.c_.size(), b.c_.size()), 0);
  for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
  return PointCountPolynomial(std::move(c));
}

PointCountPolynomial operator*(const PointCountPolynomial& a, const PointCountPolynomial& b) {
  if (a.c_.empty() || b.c_.empty()) return {};
  return PointCountPolynomial(from_boost(to_boost(a.c_) * to_boost(b.c_)));
}

std::string PointCountPolynomial::to_string() const {
  if (c_.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    const long long c = c_[i];
    if (c == 0) continue;
    if (!out.empty()) out += c < 0 ? " - " : " + ";
    else if (c < 0) out += "-";
    const long long m = c < 0 ? -c : c;
    if (i == 0) {
      out += std::to_string(m);
      continue;
    }
    if (m != 1) out += std::to_string(m);
    out += i == 1 ? "q" : "q^" + std::to_string(i);
  }
  return out;
}

// ---------------------------------------------------------------------------

int ad_w_sigma_node(const CoxeterDatum& d, const Element& w, int s) {
  const AffineWeylGroup& g = d.group();
  Element x = g.multiply(g.rmul(w, d.sigma()[s]), g.inverse(w));
  for (int u = 0; u < g.num_nodes(); ++u)
    if (g.simple(u) == x) return u;
  return -1;
}

NodeMask i_k_w_sigma(const CoxeterDatum& d, NodeMask k, const Element& w) {
  const int n = d.group().num_nodes();
  std::vector<int> img(n, -1);
  for (int s = 0; s < n; ++s)
    if (mask_has(k, s)) img[s] = ad_w_sigma_node(d, w, s);
  NodeMask j = k;
  for (bool changed = true; changed;) {
    changed = false;
    for (int s = 0; s < n; ++s)
      if (mask_has(j, s) && (img[s] < 0 || !mask_has(j, img[s]))) {
        j &= ~bit(s);
        changed = true;
      }
  }
  return j;
}

NodePerm twisted_action(const CoxeterDatum& d, NodeMask k1, const Element& w) {
  NodePerm p(d.group().num_nodes());
  for (int s = 0; s < static_cast<int>(p.size()); ++s) p[s] = mask_has(k1, s) ? ad_w_sigma_node(d, w, s) : s;
  return p;
}

PointCountPolynomial flag_fixed_point_poly(const AffineWeylGroup& g, NodeMask k, const NodePerm& f) {
  for (int a = 0; a < g.num_nodes(); ++a) {
    if (!mask_has(k, a)) continue;
    if (f[a] < 0 || !mask_has(k, f[a])) throw RzError("F does not preserve K");
    for (int b = 0; b < g.num_nodes(); ++b)
      if (mask_has(k, b) && g.coxeter(a, b) != g.coxeter(f[a], f[b]))
        throw RzError("F is not an automorphism of the Coxeter system W_K");
  }
  ParabolicSubgroup wk(g, k);
  std::vector<Element> image(wk.size());
  std::vector<long long> coeff;
  image[0] = g.identity();
  for (std::size_t i = 0; i < wk.size(); ++i) {
    if (i > 0) image[i] = g.lmul(f[wk.letter(i)], image[wk.parent(i)]);
    if (image[i] != wk.elements()[i]) continue;
    const auto l = static_cast<std::size_t>(g.length(wk.elements()[i]));
    if (coeff.size() <= l) coeff.resize(l + 1, 0);
    ++coeff[l];
  }
  return PointCountPolynomial(std::move(coeff));
}

PiPrimeOutcome pi_prime_explore(const CoxeterDatum& d, const Element& w, NodeMask k_prime) {
  const AffineWeylGroup& g = d.group();
  PiPrimeOutcome out;
  const int start_len = g.length(w);
  std::unordered_set<Element, ElementHash> seen{w};
  std::vector<Element> stack{w};
  std::set<Element> terminals;
  const std::size_t guard = ParabolicSubgroup(g, k_prime).size() * 64;
  while (!stack.empty()) {
    Element x = std::move(stack.back());
    stack.pop_back();
    if (++out.states > guard) throw InvariantBreach("partial conjugation did not terminate");
    bool moved = false;
    for (int s = 0; s < g.num_nodes(); ++s) {
      if (!mask_has(k_prime, s) || !g.left_descent(x, s)) continue;
      moved = true;
      Element y = g.rmul(g.lmul(s, x), d.sigma()[s]);
      if (seen.insert(y).second) stack.push_back(std::move(y));
    }
    if (!moved) {
      out.length_drop = std::max(out.length_drop, start_len - g.length(x));
      terminals.insert(std::move(x));
    }
  }
  out.terminals.assign(terminals.begin(), terminals.end());
  return out;
}

Element pi_prime(const CoxeterDatum& d, const Element& w, NodeMask k_prime) {
  PiPrimeOutcome o = pi_prime_explore(d, w, k_prime);
  if (!o.unique())
    throw InvariantBreach("partial conjugation of " + d.group().format(w) + " has " + std::to_string(o.terminals.size()) +
                          " distinct K'-minimal results");
  return o.terminals.front();
}

std::vector<Element> pi_prime_fiber_closed(const CoxeterDatum& d, const Element& w_prime, NodeMask k, NodeMask k_prime) {
  const AffineWeylGroup& g = d.group();
  std::vector<int> desc;
  for (int s = 0; s < g.num_nodes(); ++s)
    if (mask_has(k_prime & ~k, s) && g.right_descent(w_prime, s)) desc.push_back(s);
  // Conjugating by the sigma-orbit product of s telescopes to s . sigma^c(s),
  // where c is the number of components.
  auto round_trip = [&](int s) {
    for (int i = 0; i < g.num_components(); ++i) s = d.sigma()[s];
    return s;
  };
  std::vector<Element> out;
  for (unsigned sub = 0; sub < (1U << desc.size()); ++sub) {
    Element y = w_prime;
    for (std::size_t i = 0; i < desc.size(); ++i)
      if (sub & (1U << i)) y = g.rmul(g.lmul(desc[i], y), round_trip(desc[i]));
    out.push_back(std::move(y));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool in_discrete_fiber_situation(const CoxeterDatum& d, NodeMask k, NodeMask k_prime) {
  if (is_extended_lubin_tate(d)) return true;
  if (!is_extended_exotic_unitary(d)) return false;
  CollapsedDatum lo = collapse_restriction(d, k), hi = collapse_restriction(d, k_prime);
  return exotic_level_condition(lo.inner, lo.level, hi.level);
}

FiberReport fiber_cardinality_table(VerdictContext& ctx, NodeMask k, NodeMask k_prime, bool allow_unsupported) {
  const CoxeterDatum& d = ctx.datum();
  const AffineWeylGroup& g = d.group();
  d.check_level(k, "K");
  d.check_level(k_prime, "K'");
  if ((k & ~k_prime) != 0 || k == k_prime) throw RzError("fiber table needs K to be a proper subset of K'");
  FiberReport rep;
  rep.level = k;
  rep.level_prime = k_prime;
  rep.supported = in_discrete_fiber_situation(d, k, k_prime);
  rep.q_power = g.num_components();
  if (!rep.supported) {
    rep.reason = "outside the Lubin-Tate and exotic unitary situations";
    if (!allow_unsupported) return rep;
  }
  const AdmissibleSet& adm = ctx.adm();
  auto fail = [&](bool& flag, std::string msg) {
    flag = false;
    rep.failures.push_back(std::move(msg));
  };

  std::map<Element, std::vector<Element>> fibers;
  std::vector<Element> targets;
  for (int i : ctx.k_adm_zero(k_prime)) {
    fibers[adm.elements()[i]];
    targets.push_back(adm.elements()[i]);
  }
  for (int i : ctx.k_adm_zero(k)) {
    const Element& w = adm.elements()[i];
    PiPrimeOutcome o = pi_prime_explore(d, w, k_prime);
    if (!o.unique()) {
      if (rep.supported) throw InvariantBreach("pi' is not well defined at " + g.format(w));
      rep.reason += "; pi' is not well defined";
      rep.rows.clear();
      return rep;
    }
    auto it = fibers.find(o.terminals.front());
    if (it == fibers.end()) throw InvariantBreach("pi'(" + g.format(w) + ") leaves ^K' Adm_0");
    it->second.push_back(w);
  }

  // Fiber-size expectations are polynomials in Q = q^d.
  const int qp = rep.q_power;
  const PointCountPolynomial one = PointCountPolynomial::constant(1), two = PointCountPolynomial::constant(2);
  const PointCountPolynomial qp1 = PointCountPolynomial::binomial(1, 1, qp);
  const std::vector<PointCountPolynomial> allowed{one, two, PointCountPolynomial::constant(4), qp1, two * qp1, qp1 * qp1};
  std::vector<int> moved_local;  // nodes of K' \ K in the non-central component
  if (auto shape = local_shape(d))
    for (int s = 0; s < g.num_nodes(); ++s)
      if (mask_has(k_prime & ~k, s) && g.component_of(s) == shape->component) moved_local.push_back(s);

  sort_for_report(g, targets);
  for (const Element& wp : targets) {
    FiberRow row;
    row.w_prime = wp;
    row.i_set = i_k_w_sigma(d, k_prime, wp);
    row.flag_prime = flag_fixed_point_poly(g, row.i_set, twisted_action(d, row.i_set, wp));
    std::vector<Element> pre = fibers[wp];
    std::sort(pre.begin(), pre.end());
    std::vector<Element> closed = pi_prime_fiber_closed(d, wp, k, k_prime);
    row.closed_form_agrees = closed == pre;
    if (!row.closed_form_agrees) fail(rep.closed_form_agrees, "closed-form fiber differs at " + g.format(wp));
    sort_for_report(g, pre);
    for (const Element& w : pre) {
      FiberPreimage p;
      p.w = w;
      p.i_set = i_k_w_sigma(d, k, w);
      PointCountPolynomial low = flag_fixed_point_poly(g, p.i_set, twisted_action(d, p.i_set, w));
      auto deg = row.flag_prime.divide_exact(low);
      if (!deg) {
        fail(rep.division_exact, "non-exact division at " + g.format(w));
        deg = PointCountPolynomial{};
      }
      p.degree = *deg;
      row.total = row.total + p.degree;
      row.preimages.push_back(std::move(p));
    }
    if (rep.supported) {
      if (std::find(allowed.begin(), allowed.end(), row.total) == allowed.end())
        fail(rep.product_set_holds, "total " + row.total.to_string() + " over " + g.format(wp) + " is not in the product set");
      if (moved_local.size() == 1) {
        const int s = moved_local[0];
        const bool descent = g.right_descent(wp, s);
        const bool in_support = mask_has(g.support(wp), s);
        const PointCountPolynomial& expect = descent ? two : (in_support ? qp1 : one);
        if (row.total != expect || (row.total == qp1) != in_support)
          fail(rep.trichotomy_holds, "total " + row.total.to_string() + " over " + g.format(wp) + " breaks the trichotomy");
      }
    }
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

}  // namespace rzcomb
