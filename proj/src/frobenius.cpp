#include "rzcomb/frobenius.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace rzcomb {

NodePerm sigma_identity(const AffineDynkinComponent& c) {
  NodePerm p(c.num_nodes());
  std::iota(p.begin(), p.end(), 0);
  return p;
}

NodePerm sigma_varsigma0(const AffineDynkinComponent& c) {
  NodePerm p = sigma_identity(c);
  const int r = c.rank();
  switch (c.family()) {
    case Family::A:
      for (int i = 1; i <= r; ++i) p[i] = r + 1 - i;
      break;
    case Family::D:
      std::swap(p[r - 1], p[r]);
      break;
    default:
      throw RzError("varsigma0 is only defined for types A and D");
  }
  return p;
}

NodePerm sigma_rho(const AffineDynkinComponent& c, int k) {
  if (c.family() != Family::A) throw RzError("rotations rho_k are only defined for type A");
  const int n = c.num_nodes();
  NodePerm p(n);
  for (int i = 0; i < n; ++i) p[i] = (((i + k) % n) + n) % n;
  return p;
}

NodePerm sigma_ad_tau(const AffineDynkinComponent& c, int i) {
  return c.omega_perm(c.omega_index_of_label(i));
}

bool is_component_automorphism(const AffineDynkinComponent& c, const NodePerm& p) {
  const auto& all = c.diagram_automorphisms();
  return std::find(all.begin(), all.end(), p) != all.end();
}

namespace {

int parse_suffix(std::string_view s, std::string_view prefix) {
  std::string rest(s.substr(prefix.size()));
  if (rest.empty() || !std::all_of(rest.begin(), rest.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); }))
    throw RzError("bad automorphism name '" + std::string(s) + "'");
  return std::stoi(rest);
}

NodePerm parse_single_sigma(const AffineDynkinComponent& c, std::string_view s) {
  if (s == "id") return sigma_identity(c);
  if (s == "varsigma0") return sigma_varsigma0(c);
  if (s.rfind("ad_tau", 0) == 0) return sigma_ad_tau(c, parse_suffix(s, "ad_tau"));
  if (s.rfind("rho", 0) == 0) return sigma_rho(c, parse_suffix(s, "rho"));
  throw RzError("unknown automorphism name '" + std::string(s) + "'");
}

}  // namespace

NodePerm parse_sigma(const AffineDynkinComponent& c, std::string_view spec) {
  NodePerm acc = sigma_identity(c);
  std::string s(spec);
  s.erase(std::remove_if(s.begin(), s.end(), [](char ch) { return std::isspace(static_cast<unsigned char>(ch)); }), s.end());
  if (s.empty()) throw RzError("empty automorphism name");
  std::size_t start = 0;
  while (start <= s.size()) {
    auto star = s.find('*', start);
    std::string part = s.substr(start, star == std::string::npos ? std::string::npos : star - start);
    acc = compose_perm(acc, parse_single_sigma(c, part));
    if (star == std::string::npos) break;
    start = star + 1;
  }
  return acc;
}

// ---------------------------------------------------------------------------

CoxeterDatum::CoxeterDatum(std::shared_ptr<const AffineWeylGroup> group, NodePerm sigma, std::vector<IntVec> mu)
    : group_(std::move(group)), sigma_(std::move(sigma)), mu_(std::move(mu)) {
  const AffineWeylGroup& g = *group_;
  const int n = g.num_nodes();
  if (static_cast<int>(sigma_.size()) != n) throw RzError("sigma must permute all " + std::to_string(n) + " nodes");
  std::vector<bool> hit(n, false);
  for (int x : sigma_) {
    if (x < 0 || x >= n || hit[x]) throw RzError("sigma is not a permutation of the nodes");
    hit[x] = true;
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (g.coxeter(a, b) != g.coxeter(sigma_[a], sigma_[b]))
        throw RzError("sigma does not preserve the Coxeter matrix (" + g.node_name(a) + ", " + g.node_name(b) + ")");
  const int nc = g.num_components();
  comp_perm_.assign(nc, -1);
  for (int a = 0; a < n; ++a) {
    int from = g.component_of(a), to = g.component_of(sigma_[a]);
    if (comp_perm_[from] == -1) comp_perm_[from] = to;
    if (comp_perm_[from] != to) throw RzError("sigma does not permute components");
  }
  {
    std::vector<bool> seen(nc, false);
    int x = 0;
    for (int k = 0; k < nc; ++k) {
      seen[x] = true;
      x = comp_perm_[x];
    }
    if (!std::all_of(seen.begin(), seen.end(), [](bool b) { return b; }))
      throw RzError("sigma does not act transitively on the components");
  }
  if (static_cast<int>(mu_.size()) != nc) throw RzError("mu needs one coweight per component");
  IntVec flat;
  for (int k = 0; k < nc; ++k) {
    const auto& comp = g.component(k);
    if (static_cast<int>(mu_[k].size()) != comp.rank())
      throw RzError("mu for component " + std::to_string(k) + " must have " + std::to_string(comp.rank()) + " entries");
    mu_dom_.push_back(comp.dominant(mu_[k]));
    flat.insert(flat.end(), mu_dom_.back().begin(), mu_dom_.back().end());
  }
  tau_ = g.omega_part(g.translation(flat));
  tau_idx_ = g.omega_indices(tau_);
  ad_tau_ = g.ad_omega(tau_idx_);
  ad_tau_sigma_ = compose_perm(ad_tau_, sigma_);
}

CoxeterDatum CoxeterDatum::irreducible(Family family, int rank, const NodePerm& sigma, const IntVec& mu) {
  return CoxeterDatum(AffineWeylGroup::single(family, rank), sigma, {mu});
}

IntVec CoxeterDatum::mu_dominant_flat() const {
  IntVec flat;
  for (const auto& m : mu_dom_) flat.insert(flat.end(), m.begin(), m.end());
  return flat;
}

bool CoxeterDatum::component_central(int c) const {
  const auto& m = mu_dom_[c];
  return std::all_of(m.begin(), m.end(), [](int x) { return x == 0; });
}

int CoxeterDatum::non_central_count() const {
  int k = 0;
  for (int c = 0; c < group_->num_components(); ++c) k += component_central(c) ? 0 : 1;
  return k;
}

int CoxeterDatum::two_rho() const {
  int s = 0;
  for (int c = 0; c < group_->num_components(); ++c) s += group_->component(c).pair_two_rho(mu_dom_[c]);
  return s;
}

void CoxeterDatum::check_level(NodeMask k, std::string_view what) const {
  if ((k & ~group_->all_nodes()) != 0) throw RzError(std::string(what) + " names nodes outside the diagram");
  if (!group_->is_finite_parabolic(k))
    throw RzError(std::string(what) + " = " + format_mask(k) + " generates an infinite parabolic subgroup");
  if (!is_sigma_stable(k)) throw RzError(std::string(what) + " = " + format_mask(k) + " is not sigma-stable");
}

std::vector<NodeMask> CoxeterDatum::sigma_stable_levels() const {
  std::vector<NodeMask> orbits;
  NodeMask done = 0;
  for (int a = 0; a < group_->num_nodes(); ++a) {
    if (mask_has(done, a)) continue;
    NodeMask o = perm_closure(sigma_, bit(a));
    orbits.push_back(o);
    done |= o;
  }
  std::vector<NodeMask> out;
  const std::size_t m = orbits.size();
  for (std::size_t sel = 0; sel < (std::size_t{1} << m); ++sel) {
    NodeMask k = 0;
    for (std::size_t i = 0; i < m; ++i)
      if ((sel >> i) & 1U) k |= orbits[i];
    if (group_->is_finite_parabolic(k)) out.push_back(k);
  }
  std::sort(out.begin(), out.end(), [](NodeMask a, NodeMask b) {
    return popcount(a) != popcount(b) ? popcount(a) < popcount(b) : a < b;
  });
  return out;
}

std::string CoxeterDatum::format_mask(NodeMask k) const {
  std::string s = "{";
  bool first = true;
  for (int a = 0; a < group_->num_nodes(); ++a) {
    if (!mask_has(k, a)) continue;
    if (!first) s += ", ";
    s += group_->node_name(a);
    first = false;
  }
  return s + "}";
}

std::string CoxeterDatum::summary() const {
  std::ostringstream os;
  const auto& g = *group_;
  for (int c = 0; c < g.num_components(); ++c) os << (c ? "x" : "") << g.component(c).name();
  os << " sigma=(";
  for (int a = 0; a < g.num_nodes(); ++a) os << (a ? " " : "") << sigma_[a];
  os << ") mu=";
  for (int c = 0; c < g.num_components(); ++c) {
    os << (c ? "," : "") << "(";
    for (std::size_t j = 0; j < mu_dom_[c].size(); ++j) os << (j ? " " : "") << mu_dom_[c][j];
    os << ")";
  }
  return os.str();
}

std::vector<int> CoxeterDatum::sigma_word(const std::vector<int>& letters) const {
  std::vector<int> out;
  out.reserve(letters.size());
  for (int g : letters) out.push_back(sigma_[g]);
  return out;
}

// ---------------------------------------------------------------------------

NodeMask twisted_support(const AffineWeylGroup& g, const Element& w, const NodePerm& theta) {
  ReducedWord rw = g.reduced_word(w);
  NodeMask supp = 0;
  for (int a : rw.letters) supp |= bit(a);
  IntVec idx(g.num_components());
  for (int c = 0; c < g.num_components(); ++c)
    idx[c] = g.component(c).omega_index_of_block(rw.tail.v.data() + g.block_offset(c));
  return perm_closure(compose_perm(g.ad_omega(idx), theta), supp);
}

NodeMask sigma_support(const CoxeterDatum& d, const Element& w) {
  return twisted_support(d.group(), w, d.sigma());
}

bool fixes_point_of_closed_alcove(const CoxeterDatum& d, const Element& w) {
  const AffineWeylGroup& g = d.group();
  const int n = g.num_nodes();
  // Vertex (c, j) goes to sigma(c, j) and then through w; record the vertex
  // it lands on, or -1 if it leaves the vertex set of the base alcove.
  std::vector<int> next(n, -1);
  for (int a = 0; a < n; ++a) {
    int b = d.sigma()[a];
    int c = g.component_of(b);
    const auto& comp = g.component(c);
    IntVec v = comp.scaled_vertex(g.local_index(b));
    std::vector<long long> p(v.begin(), v.end()), out(comp.rank());
    comp.apply_scaled(w.v.data() + g.block_offset(c), p.data(), comp.vertex_scale(), out.data());
    for (int j = 0; j < comp.num_nodes(); ++j) {
      IntVec u = comp.scaled_vertex(j);
      if (std::equal(u.begin(), u.end(), out.begin(), [](int x, long long y) { return x == y; })) {
        next[a] = g.node_offset(c) + j;
        break;
      }
    }
  }
  // A fixed point exists iff every orbit of components carries a cycle.
  // sigma is transitive on components, so one cycle suffices.
  std::vector<int> state(n, 0);
  for (int a = 0; a < n; ++a) {
    int x = a;
    std::vector<int> path;
    while (x >= 0 && state[x] == 0) {
      state[x] = 1;
      path.push_back(x);
      x = next[x];
    }
    if (x >= 0 && state[x] == 1) return true;
    for (int y : path) state[y] = 2;
  }
  return false;
}

// ---------------------------------------------------------------------------

CoxeterDatum restrict_scalars(const AffineDynkinComponent& c, const NodePerm& sigma_d, int d,
                              const std::vector<IntVec>& mus) {
  if (d < 1) throw RzError("restriction degree must be positive");
  if (static_cast<int>(mus.size()) != d) throw RzError("restriction of scalars needs one coweight per copy");
  if (!is_component_automorphism(c, sigma_d)) throw RzError("inner automorphism is not a diagram automorphism");
  auto g = std::make_shared<const AffineWeylGroup>(std::vector<AffineDynkinComponent>(d, c));
  const int m = c.num_nodes();
  NodePerm sigma(d * m);
  for (int k = 0; k < d; ++k)
    for (int i = 0; i < m; ++i) sigma[k * m + i] = k + 1 < d ? (k + 1) * m + i : sigma_d[i];
  return CoxeterDatum(g, sigma, mus);
}

NodePerm sigma_power_local(const CoxeterDatum& d, int from, int steps) {
  const auto& g = d.group();
  const int m = g.component(from).num_nodes();
  NodePerm out(m);
  for (int i = 0; i < m; ++i) {
    int x = g.node_offset(from) + i;
    for (int s = 0; s < steps; ++s) x = d.sigma()[x];
    out[i] = g.local_index(x);
  }
  return out;
}

IntVec transport_coweight(const AffineDynkinComponent& c, const NodePerm& perm, const IntVec& mu) {
  // perm = Ad(tau') o eps with eps fixing s0; only eps moves the W0-orbit.
  int t = -1;
  for (int k = 0; k < c.omega_size(); ++k)
    if (c.omega_perm(k)[0] == perm[0]) t = k;
  if (t < 0) throw RzError("diagram map does not send s0 to a special node");
  NodePerm eps = compose_perm(invert_perm(c.omega_perm(t)), perm);
  IntVec out(c.rank(), 0);
  for (int i = 1; i <= c.rank(); ++i) out[eps[i] - 1] = mu[i - 1];
  return c.dominant(out);
}

CollapsedDatum collapse_restriction(const CoxeterDatum& d, NodeMask k) {
  const auto& g = d.group();
  d.check_level(k, "K");
  int src = -1;
  for (int c = 0; c < g.num_components(); ++c) {
    if (d.component_central(c)) continue;
    if (src >= 0) throw RzError("collapse needs exactly one non-central component; found more");
    src = c;
  }
  if (src < 0) throw RzError("collapse needs a non-central component; mu is central");
  const int deg = g.num_components();
  NodePerm sd = sigma_power_local(d, src, deg);
  NodeMask k1 = 0;
  for (int i = 0; i < g.component(src).num_nodes(); ++i)
    if (mask_has(k, g.node_offset(src) + i)) k1 |= bit(i);
  const auto& comp = g.component(src);
  CoxeterDatum inner(std::make_shared<const AffineWeylGroup>(std::vector<AffineDynkinComponent>{comp}), sd,
                     {d.mu_dominant()[src]});
  return CollapsedDatum{inner, src, deg, d.mu_dominant()[src], k1};
}

}  // namespace rzcomb
