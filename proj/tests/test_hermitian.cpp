#include <doctest.h>

#include "oracles.hpp"

using namespace rzcomb;

namespace {

// F_{q^2} as pairs (a, b) = a + b r over F_q.  For odd prime q, r^2 = n with n a
// non-residue; for q = 2, r^2 = r + 1.
struct QuadraticExtension {
  int q, n = 0;
  explicit QuadraticExtension(int qq) : q(qq) {
    if (q == 2) return;
    for (int c = 2; c < q; ++c) {
      bool square = false;
      for (int x = 1; x < q; ++x) square = square || (x * x) % q == c;
      if (!square) {
        n = c;
        break;
      }
    }
  }
  // h(v, v) component for a single coordinate: v * conj(v), always in F_q.
  int norm(int a, int b) const {
    if (q == 2) return (a * a + a * b + b * b) % 2;  // (a + b r)(a + b r^2)
    return ((a * a - n * b * b) % q + q) % q;
  }
};

// Isotropic lines of the standard hermitian form in dimension dim.
long long isotropic_lines_oracle(int q, int dim) {
  QuadraticExtension f(q);
  const int per = q * q;
  long long total = 1;
  for (int i = 0; i < dim; ++i) total *= per;
  long long zeros = 0;
  for (long long v = 1; v < total; ++v) {
    long long rest = v;
    int h = 0;
    for (int i = 0; i < dim; ++i) {
      const int x = static_cast<int>(rest % per);
      rest /= per;
      h = (h + f.norm(x % q, x / q)) % q;
    }
    if (h == 0) ++zeros;
  }
  return zeros / (per - 1);
}

}  // namespace

TEST_CASE("prime powers") {
  CHECK(prime_power(2) == std::make_pair(2, 1));
  CHECK(prime_power(8) == std::make_pair(2, 3));
  CHECK(prime_power(9) == std::make_pair(3, 2));
  CHECK_FALSE(prime_power(6).has_value());
  CHECK_FALSE(prime_power(1).has_value());
  CHECK_THROWS_AS(FiniteField(6), RzError);
}

TEST_CASE("field axioms") {
  for (int order : {2, 3, 4, 5, 7, 8, 9, 16, 25, 49}) {
    CAPTURE(order);
    FiniteField f(order);
    for (int a = 0; a < order; ++a) {
      CHECK(f.add(a, 0) == a);
      CHECK(f.mul(a, 1) == a);
      bool has_inverse = a == 0;
      for (int b = 0; b < order; ++b) {
        CHECK(f.add(a, b) == f.add(b, a));
        CHECK(f.mul(a, b) == f.mul(b, a));
        has_inverse = has_inverse || f.mul(a, b) == 1;
        for (int c = 0; c < order; c += 3) {
          CHECK(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
          CHECK(f.mul(a, f.mul(b, c)) == f.mul(f.mul(a, b), c));
        }
      }
      CHECK(has_inverse);
      if (a != 0) CHECK(f.pow(a, order - 1) == 1);
    }
  }
}

TEST_CASE("isotropic lines against an independent extension field") {
  for (int q : {2, 3, 5, 7}) {
    CAPTURE(q);
    const long long lines = isotropic_lines(FiniteHermitianSpace(q, 2));
    CHECK(lines == isotropic_lines_oracle(q, 2));
    CHECK(lines == q + 1);
  }
  for (int q : {2, 3}) {
    CAPTURE(q);
    const long long lines = isotropic_lines(FiniteHermitianSpace(q, 3));
    CHECK(lines == isotropic_lines_oracle(q, 3));
    CHECK(lines == static_cast<long long>(q) * q * q + 1);
  }
  CHECK(isotropic_lines(FiniteHermitianSpace(4, 2)) == 5);
}

TEST_CASE("gram matrices") {
  CHECK_THROWS_AS(FiniteHermitianSpace(3, 2, {1, 0, 0, 0}), RzError);
  CHECK_THROWS_AS(FiniteHermitianSpace(3, 2, {1, 0, 0}), RzError);
  // The hyperbolic plane carries the same number of isotropic lines.
  FiniteHermitianSpace hyp(3, 2, {0, 1, 1, 0});
  CHECK(isotropic_lines(hyp) == 4);
  FiniteHermitianSpace std3(3, 2);
  CHECK(std3.form({1, 0}, {1, 0}) == 1);
  CHECK(std3.conj(std3.conj(5)) == 5);
}

TEST_CASE("projective lines and flag polynomials") {
  for (int q : {2, 3, 4, 5, 7, 8, 9}) CHECK(projective_line_points(q) == q + 1);
  for (int q : {2, 3, 4, 5, 7}) {
    FlagCheck c = verify_flag_polynomial(FlagPair::A1Identity, q);
    CHECK(c.agree());
    CHECK(c.polynomial.to_string() == "1 + q");
  }
  for (int q : {2, 3}) {
    FlagCheck c = verify_flag_polynomial(FlagPair::A2Flip, q);
    CHECK(c.agree());
    CHECK(c.predicted == static_cast<long long>(q) * q * q + 1);
  }
}
