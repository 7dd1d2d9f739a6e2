#include "rzcomb/weyl_core.hpp"

#include <algorithm>
#include <bit>
#include <boost/functional/hash.hpp>
#include <boost/rational.hpp>
#include <deque>
#include <numeric>
#include <set>
#include <sstream>

namespace rzcomb {

char family_letter(Family f) {
  switch (f) {
    case Family::A: return 'A';
    case Family::B: return 'B';
    case Family::C: return 'C';
    case Family::D: return 'D';
  }
  return '?';
}

Family parse_family(std::string_view s) {
  if (s == "A") return Family::A;
  if (s == "B") return Family::B;
  if (s == "C") return Family::C;
  if (s == "D") return Family::D;
  throw RzError("unknown family '" + std::string(s) + "' (expected A, B, C or D)");
}

int popcount(NodeMask m) { return std::popcount(m); }

namespace {

int dot(const IntVec& a, const IntVec& b) {
  int s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

bool is_positive(const int* y, int r) {
  for (int k = 0; k < r; ++k) {
    if (y[k] > 0) return true;
    if (y[k] < 0) return false;
  }
  throw InvariantBreach("zero vector where a root was expected");
}

// Euclidean realization of the simple roots.
std::vector<IntVec> euclidean_simple_roots(Family f, int r) {
  int dim = f == Family::A ? r + 1 : r;
  std::vector<IntVec> roots(r, IntVec(dim, 0));
  for (int k = 0; k + 1 < r || (f == Family::A && k < r); ++k) {
    roots[k][k] = 1;
    roots[k][k + 1] = -1;
  }
  if (f == Family::B) roots[r - 1][r - 1] = 1;
  if (f == Family::C) roots[r - 1][r - 1] = 2;
  if (f == Family::D) {
    roots[r - 1][r - 2] = 1;
    roots[r - 1][r - 1] = 1;
  }
  return roots;
}

int bond_order(int product) {
  switch (product) {
    case 0: return 2;
    case 1: return 3;
    case 2: return 4;
    case 3: return 6;
    case 4: return 0;  // infinite bond (A~1)
  }
  throw InvariantBreach("unexpected Cartan product");
}

void search_automorphisms(const AffineDynkinComponent& c, const std::vector<int>& order,
                          std::size_t pos, NodePerm& img, std::vector<bool>& used,
                          std::vector<NodePerm>& out) {
  int n = c.num_nodes();
  if (pos == order.size()) {
    out.push_back(img);
    return;
  }
  int a = order[pos];
  for (int b = 0; b < n; ++b) {
    if (used[b]) continue;
    bool ok = true;
    for (std::size_t q = 0; q < pos && ok; ++q) {
      int x = order[q];
      ok = c.coxeter(a, x) == c.coxeter(b, img[x]);
    }
    if (!ok) continue;
    img[a] = b;
    used[b] = true;
    search_automorphisms(c, order, pos + 1, img, used, out);
    used[b] = false;
  }
  img[a] = -1;
}

}  // namespace

AffineDynkinComponent AffineDynkinComponent::build(Family family, int rank) {
  int min_rank = family == Family::A ? 1 : family == Family::B ? 3 : family == Family::C ? 2 : 4;
  if (rank < min_rank) {
    throw RzError(std::string("unsupported rank ") + std::to_string(rank) + " for family " +
                  family_letter(family) + " (minimum " + std::to_string(min_rank) + ")");
  }
  if (rank > 12) throw RzError("rank above 12 is outside the supported range");

  AffineDynkinComponent c;
  c.family_ = family;
  c.rank_ = rank;
  const int r = rank;
  auto eu = euclidean_simple_roots(family, r);
  c.cartan_.assign(r * r, 0);
  for (int k = 0; k < r; ++k)
    for (int l = 0; l < r; ++l) c.cartan_[k * r + l] = 2 * dot(eu[k], eu[l]) / dot(eu[k], eu[k]);

  // Positive roots by closure under simple reflections.
  std::set<IntVec> seen;
  std::deque<IntVec> todo;
  for (int k = 0; k < r; ++k) {
    IntVec a(r, 0);
    a[k] = 1;
    seen.insert(a);
    todo.push_back(a);
  }
  while (!todo.empty()) {
    IntVec a = todo.front();
    todo.pop_front();
    for (int k = 0; k < r; ++k) {
      int p = 0;
      for (int l = 0; l < r; ++l) p += a[l] * c.cartan(k, l);
      IntVec b = a;
      b[k] -= p;
      if (std::all_of(b.begin(), b.end(), [](int x) { return x >= 0; }) && seen.insert(b).second)
        todo.push_back(b);
    }
  }
  c.positive_roots_.assign(seen.begin(), seen.end());
  std::sort(c.positive_roots_.begin(), c.positive_roots_.end(), [](const IntVec& a, const IntVec& b) {
    int ha = std::accumulate(a.begin(), a.end(), 0), hb = std::accumulate(b.begin(), b.end(), 0);
    return ha != hb ? ha < hb : a < b;
  });
  c.marks_ = c.positive_roots_.back();

  IntVec beta_eu(eu[0].size(), 0);
  for (int k = 0; k < r; ++k)
    for (std::size_t d = 0; d < beta_eu.size(); ++d) beta_eu[d] += c.marks_[k] * eu[k][d];
  c.beta_coroot_.assign(r, 0);
  for (int l = 0; l < r; ++l) c.beta_coroot_[l] = 2 * dot(beta_eu, eu[l]) / dot(beta_eu, beta_eu);

  const int n = r + 1;
  c.coxeter_.assign(n * n, 1);
  for (int k = 0; k < r; ++k)
    for (int l = 0; l < r; ++l)
      if (k != l) c.coxeter_[(k + 1) * n + l + 1] = bond_order(c.cartan(k, l) * c.cartan(l, k));
  for (int k = 0; k < r; ++k) {
    int a = c.beta_coroot_[k];  // <beta^vee, alpha_k>
    int b = 0;                  // <alpha_k^vee, beta>
    for (int l = 0; l < r; ++l) b += c.marks_[l] * c.cartan(k, l);
    int m = bond_order(a * b);
    c.coxeter_[k + 1] = m;
    c.coxeter_[(k + 1) * n] = m;
  }

  c.vertex_scale_ = 1;
  for (int m : c.marks_) c.vertex_scale_ = std::lcm(c.vertex_scale_, m);

  // Breadth-first node order keeps the automorphism search well pruned.
  std::vector<int> order{0};
  std::vector<bool> in(n, false);
  in[0] = true;
  for (std::size_t q = 0; q < order.size(); ++q)
    for (int j = 0; j < n; ++j)
      if (!in[j] && c.coxeter(order[q], j) != 2) {
        in[j] = true;
        order.push_back(j);
      }
  NodePerm img(n, -1);
  std::vector<bool> used(n, false);
  search_automorphisms(c, order, 0, img, used, c.automorphisms_);
  std::sort(c.automorphisms_.begin(), c.automorphisms_.end());

  c.finish_omega();
  return c;
}

std::string AffineDynkinComponent::name() const {
  return std::string(1, family_letter(family_)) + std::to_string(rank_);
}

IntVec AffineDynkinComponent::scaled_vertex(int node) const {
  IntVec v(rank_, 0);
  if (node > 0) v[node - 1] = vertex_scale_ / mark(node);
  return v;
}

void AffineDynkinComponent::set_identity(int* blk) const {
  std::fill(blk, blk + block_size(), 0);
  for (int k = 0; k < rank_; ++k) blk[rank_ + k * rank_ + k] = 1;
}

void AffineDynkinComponent::left_reflect(int node, int* blk) const {
  const int r = rank_;
  int* lam = blk;
  int* u = blk + r;
  if (node > 0) {
    const int k = node - 1;
    const int lk = lam[k];
    for (int j = 0; j < r; ++j) lam[j] -= lk * cartan(k, j);
    for (int l = 0; l < r; ++l) {
      const int ukl = u[k * r + l];
      for (int j = 0; j < r; ++j) u[j * r + l] -= ukl * cartan(k, j);
    }
    return;
  }
  // s_0(v) = v - (<v, beta> - 1) beta^vee
  int pb = 0;
  for (int j = 0; j < r; ++j) pb += marks_[j] * lam[j];
  for (int j = 0; j < r; ++j) lam[j] -= (pb - 1) * beta_coroot_[j];
  for (int l = 0; l < r; ++l) {
    int col = 0;
    for (int p = 0; p < r; ++p) col += marks_[p] * u[p * r + l];
    for (int j = 0; j < r; ++j) u[j * r + l] -= col * beta_coroot_[j];
  }
}

void AffineDynkinComponent::right_reflect(int* blk, int node) const {
  const int r = rank_;
  int* lam = blk;
  int* u = blk + r;
  if (node > 0) {
    const int k = node - 1;
    for (int j = 0; j < r; ++j) {
      int acc = 0;
      for (int p = 0; p < r; ++p) acc += u[j * r + p] * cartan(k, p);
      u[j * r + k] -= acc;
    }
    return;
  }
  // w s_0 = (lambda + u beta^vee, u s_beta)
  for (int j = 0; j < r; ++j) {
    int ub = 0;
    for (int p = 0; p < r; ++p) ub += u[j * r + p] * beta_coroot_[p];
    lam[j] += ub;
    for (int l = 0; l < r; ++l) u[j * r + l] -= ub * marks_[l];
  }
}

void AffineDynkinComponent::compose(const int* a, const int* b, int* out) const {
  const int r = rank_;
  const int* ua = a + r;
  const int* ub = b + r;
  for (int j = 0; j < r; ++j) {
    int acc = a[j];
    for (int p = 0; p < r; ++p) acc += ua[j * r + p] * b[p];
    out[j] = acc;
  }
  for (int j = 0; j < r; ++j)
    for (int l = 0; l < r; ++l) {
      int acc = 0;
      for (int p = 0; p < r; ++p) acc += ua[j * r + p] * ub[p * r + l];
      out[r + j * r + l] = acc;
    }
}

int AffineDynkinComponent::length(const int* blk) const {
  const int r = rank_;
  const int* lam = blk;
  const int* u = blk + r;
  int total = 0;
  int y[16];
  for (const IntVec& a : positive_roots_) {
    int x = 0;
    for (int j = 0; j < r; ++j) x += a[j] * lam[j];
    for (int k = 0; k < r; ++k) {
      int acc = 0;
      for (int j = 0; j < r; ++j) acc += a[j] * u[j * r + k];
      y[k] = acc;
    }
    total += is_positive(y, r) ? std::abs(x) : std::abs(x - 1);
  }
  return total;
}

bool AffineDynkinComponent::left_descent(const int* blk, int node) const {
  const int r = rank_;
  const int* lam = blk;
  const int* u = blk + r;
  int y[16];
  int kk;
  if (node > 0) {
    const int k = node - 1;
    kk = lam[k];
    for (int l = 0; l < r; ++l) y[l] = u[k * r + l];
  } else {
    int pb = 0;
    for (int j = 0; j < r; ++j) pb += marks_[j] * lam[j];
    kk = 1 - pb;
    for (int l = 0; l < r; ++l) {
      int acc = 0;
      for (int j = 0; j < r; ++j) acc += marks_[j] * u[j * r + l];
      y[l] = -acc;
    }
  }
  if (kk != 0) return kk < 0;
  return !is_positive(y, r);
}

void AffineDynkinComponent::apply_scaled(const int* blk, const long long* p, long long scale,
                                         long long* out) const {
  const int r = rank_;
  const int* u = blk + r;
  for (int j = 0; j < r; ++j) {
    long long acc = scale * blk[j];
    for (int l = 0; l < r; ++l) acc += static_cast<long long>(u[j * r + l]) * p[l];
    out[j] = acc;
  }
}

void AffineDynkinComponent::reflect_coweight(int node, int* v) const {
  if (node <= 0 || node > rank_) throw RzError("finite reflection index out of range");
  const int k = node - 1;
  const int vk = v[k];
  for (int j = 0; j < rank_; ++j) v[j] -= vk * cartan(k, j);
}

IntVec AffineDynkinComponent::dominant(IntVec v) const {
  if (static_cast<int>(v.size()) != rank_) throw RzError("coweight has wrong length for " + name());
  for (;;) {
    int k = 0;
    while (k < rank_ && v[k] >= 0) ++k;
    if (k == rank_) return v;
    reflect_coweight(k + 1, v.data());
  }
}

std::vector<IntVec> AffineDynkinComponent::weyl_orbit(const IntVec& v) const {
  std::set<IntVec> seen{v};
  std::deque<IntVec> todo{v};
  while (!todo.empty()) {
    IntVec a = todo.front();
    todo.pop_front();
    for (int i = 1; i <= rank_; ++i) {
      IntVec b = a;
      reflect_coweight(i, b.data());
      if (seen.insert(b).second) todo.push_back(b);
    }
  }
  return {seen.begin(), seen.end()};
}

int AffineDynkinComponent::pair_two_rho(const IntVec& v) const {
  int s = 0;
  for (const IntVec& a : positive_roots_) s += std::abs(dot(a, v));
  return s;
}

bool AffineDynkinComponent::is_minuscule(const IntVec& v) const {
  return std::all_of(positive_roots_.begin(), positive_roots_.end(),
                     [&](const IntVec& a) { return std::abs(dot(a, v)) <= 1; });
}

bool AffineDynkinComponent::in_coroot_lattice(const IntVec& v) const {
  // Solve sum_k c_k alpha_k^vee = v, i.e. C^T c = v, over Q.
  using Q = boost::rational<long long>;
  const int r = rank_;
  std::vector<std::vector<Q>> m(r, std::vector<Q>(r + 1));
  for (int j = 0; j < r; ++j) {
    for (int k = 0; k < r; ++k) m[j][k] = cartan(k, j);
    m[j][r] = v[j];
  }
  for (int col = 0; col < r; ++col) {
    int piv = col;
    while (m[piv][col] == 0) ++piv;
    std::swap(m[piv], m[col]);
    for (int j = 0; j < r; ++j) {
      if (j == col || m[j][col] == 0) continue;
      Q f = m[j][col] / m[col][col];
      for (int k = col; k <= r; ++k) m[j][k] -= f * m[col][k];
    }
  }
  for (int j = 0; j < r; ++j)
    if ((m[j][r] / m[j][j]).denominator() != 1) return false;
  return true;
}

void AffineDynkinComponent::finish_omega() {
  const int r = rank_;
  omega_blocks_.clear();
  omega_labels_.clear();
  IntVec id(block_size());
  set_identity(id.data());
  omega_blocks_.push_back(id);
  omega_labels_.push_back(0);
  for (int i = 1; i <= r; ++i) {
    if (mark(i) != 1) continue;
    IntVec b = id;
    b[i - 1] = 1;
    for (;;) {
      int s = 0;
      while (s <= r && !left_descent(b.data(), s)) ++s;
      if (s > r) break;
      left_reflect(s, b.data());
    }
    if (length(b.data()) != 0) throw InvariantBreach("descent stripping did not reach length 0");
    omega_blocks_.push_back(b);
    omega_labels_.push_back(i);
  }
  const int n = num_nodes();
  const int k = omega_size();
  omega_perms_.assign(k, NodePerm(n, -1));
  std::vector<IntVec> verts;
  for (int j = 0; j < n; ++j) verts.push_back(scaled_vertex(j));
  for (int t = 0; t < k; ++t) {
    for (int j = 0; j < n; ++j) {
      std::vector<long long> p(verts[j].begin(), verts[j].end()), out(r);
      apply_scaled(omega_blocks_[t].data(), p.data(), vertex_scale_, out.data());
      IntVec img(out.begin(), out.end());
      auto it = std::find(verts.begin(), verts.end(), img);
      if (it == verts.end()) throw InvariantBreach("length-zero element does not permute alcove vertices");
      omega_perms_[t][j] = static_cast<int>(it - verts.begin());
    }
  }
  omega_inverse_.assign(k, -1);
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b) {
      IntVec out(block_size());
      compose(omega_blocks_[a].data(), omega_blocks_[b].data(), out.data());
      if (out == id) omega_inverse_[a] = b;
    }
  for (int a = 0; a < k; ++a)
    if (omega_inverse_[a] < 0) throw InvariantBreach("Omega is not closed under inverses");
}

int AffineDynkinComponent::omega_index_of_label(int label) const {
  for (int t = 0; t < omega_size(); ++t)
    if (omega_labels_[t] == label) return t;
  throw RzError("no length-zero element tau" + std::to_string(label) + " in " + name());
}

int AffineDynkinComponent::omega_index_of_block(const int* blk) const {
  for (int t = 0; t < omega_size(); ++t)
    if (std::equal(omega_blocks_[t].begin(), omega_blocks_[t].end(), blk)) return t;
  throw InvariantBreach("element is not of length zero");
}

std::size_t ElementHash::operator()(const Element& e) const noexcept {
  return boost::hash_range(e.v.begin(), e.v.end());
}

// ---------------------------------------------------------------------------

AffineWeylGroup::AffineWeylGroup(std::vector<AffineDynkinComponent> comps) : comps_(std::move(comps)) {
  if (comps_.empty()) throw RzError("a datum needs at least one component");
  for (const auto& c : comps_) {
    node_off_.push_back(total_nodes_);
    cw_off_.push_back(total_rank_);
    blk_off_.push_back(total_blk_);
    for (int j = 0; j < c.num_nodes(); ++j) node_comp_.push_back(static_cast<int>(node_off_.size()) - 1);
    total_nodes_ += c.num_nodes();
    total_rank_ += c.rank();
    total_blk_ += c.block_size();
  }
  if (total_nodes_ > 64) throw RzError("more than 64 affine nodes in total");
}

std::shared_ptr<const AffineWeylGroup> AffineWeylGroup::single(Family family, int rank) {
  return std::make_shared<const AffineWeylGroup>(
      std::vector<AffineDynkinComponent>{AffineDynkinComponent::build(family, rank)});
}

int AffineWeylGroup::coxeter(int a, int b) const {
  int ca = component_of(a), cb = component_of(b);
  if (ca != cb) return a == b ? 1 : 2;
  return comps_[ca].coxeter(local_index(a), local_index(b));
}

NodeMask AffineWeylGroup::component_mask(int c) const {
  NodeMask m = 0;
  for (int j = 0; j < comps_[c].num_nodes(); ++j) m |= bit(node_off_[c] + j);
  return m;
}

NodeMask AffineWeylGroup::all_nodes() const {
  return total_nodes_ == 64 ? ~NodeMask{0} : (bit(total_nodes_) - 1);
}

bool AffineWeylGroup::is_finite_parabolic(NodeMask k) const {
  for (int c = 0; c < num_components(); ++c) {
    NodeMask cm = component_mask(c);
    if ((k & cm) == cm) return false;
  }
  return true;
}

std::string AffineWeylGroup::node_name(int node) const {
  int c = component_of(node);
  return "s" + std::to_string(local_index(node)) + std::string(c, '\'');
}

int AffineWeylGroup::parse_node(std::string_view s) const {
  if (s.size() < 2 || s[0] != 's') return -1;
  std::size_t i = 1;
  int idx = 0;
  if (!std::isdigit(static_cast<unsigned char>(s[i]))) return -1;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) idx = idx * 10 + (s[i++] - '0');
  int c = 0;
  while (i < s.size() && s[i] == '\'') ++c, ++i;
  if (i != s.size() || c >= num_components() || idx >= comps_[c].num_nodes()) return -1;
  return node_off_[c] + idx;
}

Element AffineWeylGroup::identity() const {
  Element e{IntVec(total_blk_)};
  for (int c = 0; c < num_components(); ++c) comps_[c].set_identity(e.v.data() + blk_off_[c]);
  return e;
}

Element AffineWeylGroup::simple(int node) const { return lmul(node, identity()); }

Element AffineWeylGroup::translation(const IntVec& lambda) const {
  if (static_cast<int>(lambda.size()) != total_rank_) throw RzError("translation vector has wrong length");
  Element e = identity();
  for (int c = 0; c < num_components(); ++c)
    for (int j = 0; j < comps_[c].rank(); ++j) e.v[blk_off_[c] + j] = lambda[cw_off_[c] + j];
  return e;
}

Element AffineWeylGroup::multiply(const Element& a, const Element& b) const {
  if (a.v.size() != b.v.size() || static_cast<int>(a.v.size()) != total_blk_)
    throw RzError("elements belong to different groups");
  Element out{IntVec(total_blk_)};
  for (int c = 0; c < num_components(); ++c)
    comps_[c].compose(a.v.data() + blk_off_[c], b.v.data() + blk_off_[c], out.v.data() + blk_off_[c]);
  return out;
}

Element AffineWeylGroup::lmul(int node, Element w) const {
  int c = component_of(node);
  comps_[c].left_reflect(local_index(node), w.v.data() + blk_off_[c]);
  return w;
}

Element AffineWeylGroup::rmul(Element w, int node) const {
  int c = component_of(node);
  comps_[c].right_reflect(w.v.data() + blk_off_[c], local_index(node));
  return w;
}

Element AffineWeylGroup::word_element(const std::vector<int>& letters, const Element& tail) const {
  Element w = tail;
  for (auto it = letters.rbegin(); it != letters.rend(); ++it) w = lmul(*it, std::move(w));
  return w;
}

Element AffineWeylGroup::inverse(const Element& w) const {
  ReducedWord rw = reduced_word(w);
  IntVec idx = omega_indices(rw.tail);
  for (int c = 0; c < num_components(); ++c) idx[c] = comps_[c].omega_inverse(idx[c]);
  Element out = omega_element(idx);
  for (auto it = rw.letters.rbegin(); it != rw.letters.rend(); ++it) out = rmul(std::move(out), *it);
  return out;
}

IntVec AffineWeylGroup::translation_part(const Element& w) const {
  IntVec lam(total_rank_);
  for (int c = 0; c < num_components(); ++c)
    for (int j = 0; j < comps_[c].rank(); ++j) lam[cw_off_[c] + j] = w.v[blk_off_[c] + j];
  return lam;
}

bool AffineWeylGroup::is_translation(const Element& w) const {
  Element id = identity();
  for (int c = 0; c < num_components(); ++c) {
    int r = comps_[c].rank();
    if (!std::equal(w.v.begin() + blk_off_[c] + r, w.v.begin() + blk_off_[c] + r + r * r,
                    id.v.begin() + blk_off_[c] + r))
      return false;
  }
  return true;
}

int AffineWeylGroup::length(const Element& w) const {
  int s = 0;
  for (int c = 0; c < num_components(); ++c) s += comps_[c].length(w.v.data() + blk_off_[c]);
  return s;
}

bool AffineWeylGroup::left_descent(const Element& w, int node) const {
  int c = component_of(node);
  return comps_[c].left_descent(w.v.data() + blk_off_[c], local_index(node));
}

bool AffineWeylGroup::right_descent(const Element& w, int node) const {
  return length(rmul(w, node)) < length(w);
}

NodeMask AffineWeylGroup::left_descents(const Element& w) const {
  NodeMask m = 0;
  for (int g = 0; g < total_nodes_; ++g)
    if (left_descent(w, g)) m |= bit(g);
  return m;
}

bool AffineWeylGroup::is_K_minimal(const Element& w, NodeMask k) const {
  for (int g = 0; g < total_nodes_; ++g)
    if (mask_has(k, g) && left_descent(w, g)) return false;
  return true;
}

ReducedWord AffineWeylGroup::reduced_word(const Element& w) const {
  ReducedWord rw;
  rw.tail = w;
  for (;;) {
    int g = 0;
    while (g < total_nodes_ && !left_descent(rw.tail, g)) ++g;
    if (g == total_nodes_) break;
    rw.letters.push_back(g);
    rw.tail = lmul(g, std::move(rw.tail));
  }
  return rw;
}

NodeMask AffineWeylGroup::support(const Element& w) const {
  NodeMask m = 0;
  for (int g : reduced_word(w).letters) m |= bit(g);
  return m;
}

Element AffineWeylGroup::omega_part(const Element& w) const { return reduced_word(w).tail; }

IntVec AffineWeylGroup::omega_indices(const Element& w) const {
  Element t = omega_part(w);
  IntVec idx(num_components());
  for (int c = 0; c < num_components(); ++c) idx[c] = comps_[c].omega_index_of_block(t.v.data() + blk_off_[c]);
  return idx;
}

Element AffineWeylGroup::omega_element(const IntVec& indices) const {
  Element e{IntVec(total_blk_)};
  for (int c = 0; c < num_components(); ++c) {
    const IntVec& b = comps_[c].omega_block(indices[c]);
    std::copy(b.begin(), b.end(), e.v.begin() + blk_off_[c]);
  }
  return e;
}

NodePerm AffineWeylGroup::ad_omega(const IntVec& indices) const {
  NodePerm p(total_nodes_);
  for (int c = 0; c < num_components(); ++c) {
    const NodePerm& q = comps_[c].omega_perm(indices[c]);
    for (int j = 0; j < comps_[c].num_nodes(); ++j) p[node_off_[c] + j] = node_off_[c] + q[j];
  }
  return p;
}

bool AffineWeylGroup::bruhat_leq(Element a, Element b) const {
  if (omega_part(a) != omega_part(b)) return false;
  int la = length(a), lb = length(b);
  while (lb > 0) {
    if (la > lb) return false;
    int g = 0;
    while (!left_descent(b, g)) ++g;
    b = lmul(g, std::move(b));
    --lb;
    if (left_descent(a, g)) {
      a = lmul(g, std::move(a));
      --la;
    }
  }
  return a == b;
}

std::vector<long long> AffineWeylGroup::apply_scaled(const Element& w, const std::vector<long long>& p,
                                                     long long scale) const {
  std::vector<long long> out(total_rank_);
  for (int c = 0; c < num_components(); ++c)
    comps_[c].apply_scaled(w.v.data() + blk_off_[c], p.data() + cw_off_[c], scale, out.data() + cw_off_[c]);
  return out;
}

std::string AffineWeylGroup::omega_label(const IntVec& indices) const {
  std::string s;
  for (int c = 0; c < num_components(); ++c) {
    int lab = comps_[c].omega_label(indices[c]);
    if (lab == 0) continue;
    if (!s.empty()) s += ' ';
    s += "tau" + std::to_string(lab) + std::string(c, '\'');
  }
  return s.empty() ? "1" : s;
}

std::string AffineWeylGroup::format_word(const std::vector<int>& letters) const {
  std::string s;
  for (int g : letters) {
    if (!s.empty()) s += ' ';
    s += node_name(g);
  }
  return s;
}

std::string AffineWeylGroup::format(const Element& w) const {
  ReducedWord rw = reduced_word(w);
  IntVec idx(num_components());
  for (int c = 0; c < num_components(); ++c) idx[c] = comps_[c].omega_index_of_block(rw.tail.v.data() + blk_off_[c]);
  std::string tail = omega_label(idx);
  if (rw.letters.empty()) return tail;
  return format_word(rw.letters) + " . " + tail;
}

Element AffineWeylGroup::parse(std::string_view text) const {
  std::string t(text);
  std::string word_part, tail_part;
  auto dot = t.find('.');
  if (dot == std::string::npos) {
    tail_part = t;
  } else {
    word_part = t.substr(0, dot);
    tail_part = t.substr(dot + 1);
  }
  std::vector<int> letters;
  std::istringstream ws(word_part);
  for (std::string tok; ws >> tok;) {
    int g = parse_node(tok);
    if (g < 0) throw RzError("unknown simple reflection '" + tok + "'");
    letters.push_back(g);
  }
  IntVec idx(num_components(), 0);
  std::istringstream ts(tail_part);
  for (std::string tok; ts >> tok;) {
    if (tok == "1") continue;
    if (tok.rfind("tau", 0) != 0) throw RzError("bad length-zero label '" + tok + "'");
    std::size_t i = 3;
    int lab = 0;
    while (i < tok.size() && std::isdigit(static_cast<unsigned char>(tok[i]))) lab = lab * 10 + (tok[i++] - '0');
    int c = 0;
    while (i < tok.size() && tok[i] == '\'') ++c, ++i;
    if (i != tok.size() || c >= num_components()) throw RzError("bad length-zero label '" + tok + "'");
    idx[c] = comps_[c].omega_index_of_label(lab);
  }
  return word_element(letters, omega_element(idx));
}

// ---------------------------------------------------------------------------

std::size_t BruhatCache::PairHash::operator()(const std::pair<Element, Element>& p) const noexcept {
  std::size_t h = ElementHash{}(p.first);
  boost::hash_combine(h, ElementHash{}(p.second));
  return h;
}

bool BruhatCache::leq(const Element& a, const Element& b) {
  Key key{a, b};
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = map_.find(key);
    if (it != map_.end()) {
      ++hits_;
      order_.splice(order_.begin(), order_, it->second);
      return it->second->second;
    }
  }
  bool r = g_.bruhat_leq(a, b);
  std::lock_guard<std::mutex> lock(mu_);
  if (map_.count(key)) return r;
  order_.emplace_front(key, r);
  map_.emplace(std::move(key), order_.begin());
  if (map_.size() > capacity_) {
    map_.erase(order_.back().first);
    order_.pop_back();
  }
  return r;
}

// ---------------------------------------------------------------------------

NodePerm compose_perm(const NodePerm& p, const NodePerm& q) {
  NodePerm r(q.size());
  for (std::size_t i = 0; i < q.size(); ++i) r[i] = p[q[i]];
  return r;
}

NodePerm invert_perm(const NodePerm& p) {
  NodePerm r(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) r[p[i]] = static_cast<int>(i);
  return r;
}

NodeMask apply_perm(const NodePerm& p, NodeMask m) {
  NodeMask r = 0;
  for (std::size_t i = 0; i < p.size(); ++i)
    if (mask_has(m, static_cast<int>(i))) r |= bit(p[i]);
  return r;
}

NodeMask perm_closure(const NodePerm& p, NodeMask m) {
  for (;;) {
    NodeMask n = m | apply_perm(p, m);
    if (n == m) return m;
    m = n;
  }
}

NodeMask perm_interior(const NodePerm& p, NodeMask m) {
  for (;;) {
    NodeMask keep = 0;
    for (std::size_t i = 0; i < p.size(); ++i)
      if (mask_has(m, static_cast<int>(i)) && mask_has(m, p[i])) keep |= bit(static_cast<int>(i));
    if (keep == m) return m;
    m = keep;
  }
}

}  // namespace rzcomb
