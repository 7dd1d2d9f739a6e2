// Change of parahoric level: I(K, w, sigma), partial sigma-conjugation, the
// stratum map pi', flag fixed-point polynomials and fiber cardinalities.

#pragma once

#include "rzcomb/classification.hpp"

namespace rzcomb {

// Polynomial in q with integer coefficients; coefficient i multiplies q^i.
class PointCountPolynomial {
 public:
  PointCountPolynomial() = default;
  explicit PointCountPolynomial(std::vector<long long> coeffs);
  static PointCountPolynomial constant(long long c);
  // c0 + c1 q^d
  static PointCountPolynomial binomial(long long c0, long long c1, int d);

  const std::vector<long long>& coefficients() const { return c_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  long long evaluate(long long q) const;
  // p(q^d)
  PointCountPolynomial substitute_power(int d) const;
  std::optional<PointCountPolynomial> divide_exact(const PointCountPolynomial& by) const;
  std::string to_string() const;

  friend PointCountPolynomial operator+(const PointCountPolynomial& a, const PointCountPolynomial& b);
  friend PointCountPolynomial operator*(const PointCountPolynomial& a, const PointCountPolynomial& b);
  friend bool operator==(const PointCountPolynomial&, const PointCountPolynomial&) = default;

 private:
  void trim();
  std::vector<long long> c_;
};

// Node image of s under Ad(w) o sigma, or -1 when w s_{sigma(s)} w^-1 is not simple.
int ad_w_sigma_node(const CoxeterDatum& d, const Element& w, int s);
NodeMask i_k_w_sigma(const CoxeterDatum& d, NodeMask k, const Element& w);
// The node permutation Ad(w) o sigma restricted to I(K, w, sigma) (identity elsewhere).
NodePerm twisted_action(const CoxeterDatum& d, NodeMask k1, const Element& w);

// Sum of q^l(x) over x in W_K with F(x) = x; F must be an automorphism of (W_K, K).
PointCountPolynomial flag_fixed_point_poly(const AffineWeylGroup& g, NodeMask k, const NodePerm& f);

struct PiPrimeOutcome {
  std::vector<Element> terminals;  // distinct K'-minimal results over all move orders
  std::size_t states = 0;
  int length_drop = 0;
  bool unique() const { return terminals.size() == 1; }
};
// Explores every order of the moves w -> s w sigma(s), s in K' a left descent.
PiPrimeOutcome pi_prime_explore(const CoxeterDatum& d, const Element& w, NodeMask k_prime);
// Throws InvariantBreach unless the result is independent of the order.
Element pi_prime(const CoxeterDatum& d, const Element& w, NodeMask k_prime);

// Preimages of w' by the case table: x w' sigma(x)^-1 over products x of the
// right descents of w' in K' \ K.
std::vector<Element> pi_prime_fiber_closed(const CoxeterDatum& d, const Element& w_prime, NodeMask k, NodeMask k_prime);

struct FiberPreimage {
  Element w;
  NodeMask i_set = 0;
  PointCountPolynomial degree;
};

struct FiberRow {
  Element w_prime;
  NodeMask i_set = 0;
  PointCountPolynomial flag_prime;
  std::vector<FiberPreimage> preimages;
  PointCountPolynomial total;
  bool closed_form_agrees = true;
};

struct FiberReport {
  NodeMask level = 0, level_prime = 0;
  bool supported = false;
  std::string reason;
  int q_power = 1;  // totals are polynomials in q^q_power
  std::vector<FiberRow> rows;
  bool division_exact = true;
  bool closed_form_agrees = true;
  bool trichotomy_holds = true;
  bool product_set_holds = true;
  std::vector<std::string> failures;
  bool ok() const { return division_exact && closed_form_agrees && trichotomy_holds && product_set_holds; }
};

// Situation 4.2 only unless allow_unsupported is set.
FiberReport fiber_cardinality_table(VerdictContext& ctx, NodeMask k, NodeMask k_prime, bool allow_unsupported = false);
bool in_discrete_fiber_situation(const CoxeterDatum& d, NodeMask k, NodeMask k_prime);

}  // namespace rzcomb
