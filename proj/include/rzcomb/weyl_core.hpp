// Extended affine Weyl groups of untwisted types A~, B~, C~, D~.
//
// Coordinates: a coweight v is stored by its pairings (<v, alpha_1>, ...,
// <v, alpha_r>) with the simple roots, i.e. in the basis of fundamental
// coweights.  A root is stored by its coefficients in the simple roots, so
// the pairing is a plain dot product.  An element is the affine map
// v -> u(v) + lambda with u an integer matrix in the same basis.

#pragma once

#include <cstdint>
#include <list>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace rzcomb {

using IntVec = std::vector<int>;
using NodeMask = std::uint64_t;
using NodePerm = std::vector<int>;

class RzError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised when an internal consistency check fails.
class InvariantBreach : public RzError {
 public:
  using RzError::RzError;
};

class BudgetExceeded : public RzError {
 public:
  using RzError::RzError;
};

enum class Family { A, B, C, D };

char family_letter(Family f);
Family parse_family(std::string_view s);

inline bool mask_has(NodeMask m, int i) { return (m >> i) & 1U; }
inline NodeMask bit(int i) { return NodeMask{1} << i; }
int popcount(NodeMask m);

class AffineDynkinComponent {
 public:
  static AffineDynkinComponent build(Family family, int rank);

  Family family() const { return family_; }
  int rank() const { return rank_; }
  int num_nodes() const { return rank_ + 1; }
  int block_size() const { return rank_ + rank_ * rank_; }
  std::string name() const;  // "A2", "C2", ...

  int coxeter(int i, int j) const { return coxeter_[i * num_nodes() + j]; }
  // <alpha_k^vee, alpha_l> for finite indices k, l in [0, rank).
  int cartan(int k, int l) const { return cartan_[k * rank_ + l]; }
  const std::vector<IntVec>& positive_roots() const { return positive_roots_; }
  // Coefficients m_i of the highest root beta; mark(i) for node i >= 1.
  int mark(int node) const { return marks_[node - 1]; }
  const IntVec& marks() const { return marks_; }
  const IntVec& highest_coroot() const { return beta_coroot_; }
  bool is_special_node(int node) const { return node == 0 || mark(node) == 1; }
  int vertex_scale() const { return vertex_scale_; }
  // Scaled vertex coordinates: vertex_scale() times the vertex of the base alcove.
  IntVec scaled_vertex(int node) const;

  // Block operations.  A block holds lambda (rank entries) then u row-major.
  void set_identity(int* blk) const;
  void left_reflect(int node, int* blk) const;
  void right_reflect(int* blk, int node) const;
  void compose(const int* a, const int* b, int* out) const;
  int length(const int* blk) const;
  bool left_descent(const int* blk, int node) const;
  // out = u(p) + scale * lambda.
  void apply_scaled(const int* blk, const long long* p, long long scale, long long* out) const;

  // Finite Weyl group on coweight vectors.
  void reflect_coweight(int node, int* v) const;
  IntVec dominant(IntVec v) const;
  std::vector<IntVec> weyl_orbit(const IntVec& v) const;
  int pair_two_rho(const IntVec& dominant_v) const;
  bool is_minuscule(const IntVec& v) const;
  bool in_coroot_lattice(const IntVec& v) const;

  // Length-zero elements: index 0 is the identity, then tau_i for the
  // minuscule nodes i in increasing order.
  int omega_size() const { return static_cast<int>(omega_blocks_.size()); }
  const IntVec& omega_block(int k) const { return omega_blocks_[k]; }
  int omega_label(int k) const { return omega_labels_[k]; }
  const NodePerm& omega_perm(int k) const { return omega_perms_[k]; }
  int omega_inverse(int k) const { return omega_inverse_[k]; }
  int omega_index_of_label(int label) const;
  int omega_index_of_block(const int* blk) const;

  // All permutations of the nodes preserving the Coxeter matrix.
  const std::vector<NodePerm>& diagram_automorphisms() const { return automorphisms_; }

 private:
  Family family_{Family::A};
  int rank_{0};
  IntVec coxeter_;
  IntVec cartan_;
  std::vector<IntVec> positive_roots_;
  IntVec marks_;
  IntVec beta_coroot_;
  int vertex_scale_{1};
  std::vector<IntVec> omega_blocks_;
  IntVec omega_labels_;
  std::vector<NodePerm> omega_perms_;
  IntVec omega_inverse_;
  std::vector<NodePerm> automorphisms_;

  void finish_omega();
};

struct Element {
  IntVec v;
  friend bool operator==(const Element&, const Element&) = default;
  friend auto operator<=>(const Element&, const Element&) = default;
};

struct ElementHash {
  std::size_t operator()(const Element& e) const noexcept;
};

struct ReducedWord {
  std::vector<int> letters;  // global node indices, leftmost first
  Element tail;              // length-zero part
};

// Product of components; the base alcove is the product of the component alcoves.
class AffineWeylGroup {
 public:
  explicit AffineWeylGroup(std::vector<AffineDynkinComponent> comps);
  static std::shared_ptr<const AffineWeylGroup> single(Family family, int rank);

  int num_components() const { return static_cast<int>(comps_.size()); }
  const AffineDynkinComponent& component(int c) const { return comps_[c]; }
  int num_nodes() const { return total_nodes_; }
  int node_offset(int c) const { return node_off_[c]; }
  int coweight_offset(int c) const { return cw_off_[c]; }
  int block_offset(int c) const { return blk_off_[c]; }
  int coweight_dim() const { return total_rank_; }
  int component_of(int node) const { return node_comp_[node]; }
  int local_index(int node) const { return node - node_off_[node_comp_[node]]; }
  int coxeter(int a, int b) const;
  NodeMask component_mask(int c) const;
  NodeMask all_nodes() const;
  bool is_finite_parabolic(NodeMask k) const;
  std::string node_name(int node) const;
  // Inverse of node_name; returns -1 when unknown.
  int parse_node(std::string_view s) const;

  Element identity() const;
  Element simple(int node) const;
  Element translation(const IntVec& lambda) const;
  Element multiply(const Element& a, const Element& b) const;
  Element inverse(const Element& w) const;
  Element lmul(int node, Element w) const;
  Element rmul(Element w, int node) const;
  Element word_element(const std::vector<int>& letters, const Element& tail) const;

  IntVec translation_part(const Element& w) const;
  bool is_translation(const Element& w) const;
  int length(const Element& w) const;
  bool left_descent(const Element& w, int node) const;
  bool right_descent(const Element& w, int node) const;
  NodeMask left_descents(const Element& w) const;
  bool is_K_minimal(const Element& w, NodeMask k) const;
  ReducedWord reduced_word(const Element& w) const;
  NodeMask support(const Element& w) const;
  Element omega_part(const Element& w) const;
  // Per component index into the component's Omega list.
  IntVec omega_indices(const Element& w) const;
  Element omega_element(const IntVec& indices) const;
  // Ad(tau) as a permutation of all nodes, for tau given by Omega indices.
  NodePerm ad_omega(const IntVec& indices) const;
  bool bruhat_leq(Element a, Element b) const;

  // Scaled apartment points, one block of coweight_dim() entries.
  std::vector<long long> apply_scaled(const Element& w, const std::vector<long long>& p,
                                      long long scale) const;

  std::string omega_label(const IntVec& indices) const;
  std::string format(const Element& w) const;
  std::string format_word(const std::vector<int>& letters) const;
  // Parses "s1 s0 . tau1" (component primes allowed); throws RzError.
  Element parse(std::string_view text) const;

 private:
  std::vector<AffineDynkinComponent> comps_;
  IntVec node_off_, cw_off_, blk_off_, node_comp_;
  int total_nodes_{0}, total_rank_{0}, total_blk_{0};
};

// Bruhat comparisons with a bounded, thread-safe LRU memo.
class BruhatCache {
 public:
  explicit BruhatCache(const AffineWeylGroup& g, std::size_t capacity = 1U << 16)
      : g_(g), capacity_(capacity) {}
  bool leq(const Element& a, const Element& b);
  std::size_t hits() const { return hits_; }

 private:
  struct PairHash {
    std::size_t operator()(const std::pair<Element, Element>& p) const noexcept;
  };
  using Key = std::pair<Element, Element>;
  const AffineWeylGroup& g_;
  std::size_t capacity_;
  std::list<std::pair<Key, bool>> order_;
  std::unordered_map<Key, std::list<std::pair<Key, bool>>::iterator, PairHash> map_;
  std::mutex mu_;
  std::size_t hits_{0};
};

NodePerm compose_perm(const NodePerm& p, const NodePerm& q);  // p after q
NodePerm invert_perm(const NodePerm& p);
NodeMask apply_perm(const NodePerm& p, NodeMask m);
// Smallest p-stable set containing m.
NodeMask perm_closure(const NodePerm& p, NodeMask m);
// Largest p-stable subset of m.
NodeMask perm_interior(const NodePerm& p, NodeMask m);

}  // namespace rzcomb
