// Brute-force finite geometry: hermitian spaces over F_{q^2} and projective
// lines over F_q, used to ground the flag fixed-point polynomials.

#pragma once

#include "rzcomb/fibers.hpp"

namespace rzcomb {

// GF(p^e) with full addition and multiplication tables. Elements are the
// integers 0..order-1 read as base-p coefficient vectors.
class FiniteField {
 public:
  explicit FiniteField(int order);
  int order() const { return order_; }
  int characteristic() const { return p_; }
  int degree() const { return e_; }
  int add(int a, int b) const { return add_[a * order_ + b]; }
  int mul(int a, int b) const { return mul_[a * order_ + b]; }
  int pow(int a, long long k) const;
  const IntVec& modulus() const { return modulus_; }  // monic, low degree first

 private:
  int order_, p_, e_;
  IntVec modulus_;
  std::vector<int> add_, mul_;
};

// (p, e) with p^e = q, or nullopt when q is not a prime power.
std::optional<std::pair<int, int>> prime_power(int q);

class FiniteHermitianSpace {
 public:
  // The form sum conj(x_i) G_ij y_j over F_{q^2}, conj(x) = x^q; identity Gram by default.
  FiniteHermitianSpace(int q, int n);
  FiniteHermitianSpace(int q, int n, std::vector<int> gram);
  int q() const { return q_; }
  int dimension() const { return n_; }
  const FiniteField& field() const { return field_; }
  int conj(int x) const { return field_.pow(x, q_); }
  int form(const IntVec& x, const IntVec& y) const;

 private:
  void validate() const;
  int q_, n_;
  FiniteField field_;
  std::vector<int> gram_;
};

// Projective points [v] with h(v, v) = 0.
long long isotropic_lines(const FiniteHermitianSpace& space);
// Lines in F_q^2, counted through normalized representatives.
long long projective_line_points(int q);

enum class FlagPair { A1Identity, A2Flip };

struct FlagCheck {
  PointCountPolynomial polynomial;
  long long predicted = 0;
  long long counted = 0;
  bool agree() const { return predicted == counted; }
};

FlagCheck verify_flag_polynomial(FlagPair pair, int q);

}  // namespace rzcomb
