#include "rzcomb/hermitian.hpp"

namespace rzcomb {

std::optional<std::pair<int, int>> prime_power(int q) {
  if (q < 2) return std::nullopt;
  int p = 2;
  while (q % p != 0) ++p;
  int e = 0;
  for (int r = q; r > 1; r /= p) {
    if (r % p != 0) return std::nullopt;
    ++e;
  }
  return std::make_pair(p, e);
}

namespace {

// Polynomials over F_p as coefficient vectors, low degree first.
IntVec poly_mod(IntVec a, const IntVec& m, int p) {
  const int dm = static_cast<int>(m.size()) - 1;
  for (int i = static_cast<int>(a.size()) - 1; i >= dm; --i) {
    const int c = a[i];
    if (c == 0) continue;
    for (int j = 0; j <= dm; ++j) a[i - dm + j] = ((a[i - dm + j] - c * m[j]) % p + p) % p;
  }
  a.resize(std::min<std::size_t>(a.size(), dm));
  return a;
}

bool is_zero(const IntVec& a) {
  for (int x : a)
    if (x) return false;
  return true;
}

IntVec monic_from_index(long long idx, int deg, int p) {
  IntVec m(deg + 1, 0);
  m[deg] = 1;
  for (int i = 0; i < deg; ++i, idx /= p) m[i] = static_cast<int>(idx % p);
  return m;
}

bool irreducible(const IntVec& m, int p) {
  const int deg = static_cast<int>(m.size()) - 1;
  for (int d = 1; d <= deg / 2; ++d) {
    long long count = 1;
    for (int i = 0; i < d; ++i) count *= p;
    for (long long idx = 0; idx < count; ++idx)
      if (is_zero(poly_mod(m, monic_from_index(idx, d, p), p))) return false;
  }
  return true;
}

IntVec digits(int x, int p, int e) {
  IntVec v(e);
  for (int i = 0; i < e; ++i, x /= p) v[i] = x % p;
  return v;
}

int undigits(const IntVec& v, int p) {
  int x = 0;
  for (int i = static_cast<int>(v.size()) - 1; i >= 0; --i) x = x * p + v[i];
  return x;
}

}  // namespace

FiniteField::FiniteField(int order) : order_(order) {
  auto pe = prime_power(order);
  if (!pe) throw RzError(std::to_string(order) + " is not a prime power");
  p_ = pe->first;
  e_ = pe->second;
  long long count = 1;
  for (int i = 0; i < e_; ++i) count *= p_;
  for (long long idx = 0; idx < count; ++idx) {
    IntVec m = monic_from_index(idx, e_, p_);
    if (irreducible(m, p_)) {
      modulus_ = m;
      break;
    }
  }
  add_.resize(static_cast<std::size_t>(order_) * order_);
  mul_.resize(add_.size());
  for (int a = 0; a < order_; ++a) {
    IntVec da = digits(a, p_, e_);
    for (int b = 0; b < order_; ++b) {
      IntVec db = digits(b, p_, e_), s(e_), prod(2 * e_, 0);
      for (int i = 0; i < e_; ++i) s[i] = (da[i] + db[i]) % p_;
      for (int i = 0; i < e_; ++i)
        for (int j = 0; j < e_; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p_;
      add_[a * order_ + b] = undigits(s, p_);
      IntVec r = poly_mod(prod, modulus_, p_);
      r.resize(e_, 0);
      mul_[a * order_ + b] = undigits(r, p_);
    }
  }
}

int FiniteField::pow(int a, long long k) const {
  int acc = 1, base = a;
  for (; k > 0; k >>= 1) {
    if (k & 1) acc = mul(acc, base);
    base = mul(base, base);
  }
  return acc;
}

// ---------------------------------------------------------------------------

namespace {

std::vector<int> identity_gram(int n) {
  std::vector<int> g(static_cast<std::size_t>(n) * n, 0);
  for (int i = 0; i < n; ++i) g[i * n + i] = 1;
  return g;
}

void check_q(int q) {
  if (!prime_power(q)) throw RzError("q = " + std::to_string(q) + " is not a prime power");
  if (q > 9) throw RzError("hermitian spaces are limited to q <= 9");
}

}  // namespace

FiniteHermitianSpace::FiniteHermitianSpace(int q, int n) : FiniteHermitianSpace(q, n, identity_gram(n)) {}

FiniteHermitianSpace::FiniteHermitianSpace(int q, int n, std::vector<int> gram)
    : q_((check_q(q), q)), n_(n), field_(q * q), gram_(std::move(gram)) {
  if (n < 2 || n > 3) throw RzError("hermitian spaces are supported in dimension 2 and 3");
  if (static_cast<int>(gram_.size()) != n * n) throw RzError("Gram matrix has the wrong size");
  validate();
}

void FiniteHermitianSpace::validate() const {
  const auto& f = field_;
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j)
      if (gram_[i * n_ + j] != conj(gram_[j * n_ + i])) throw RzError("Gram matrix is not hermitian");
  // Determinant by cofactor expansion; -x is x * (p - 1).
  auto neg = [&](int x) { return f.mul(x, f.characteristic() - 1); };
  auto g = [&](int i, int j) { return gram_[i * n_ + j]; };
  int det;
  if (n_ == 2) {
    det = f.add(f.mul(g(0, 0), g(1, 1)), neg(f.mul(g(0, 1), g(1, 0))));
  } else {
    auto minor = [&](int a, int b, int c, int d) { return f.add(f.mul(g(1, a), g(2, b)), neg(f.mul(g(1, c), g(2, d)))); };
    det = f.add(f.add(f.mul(g(0, 0), minor(1, 2, 2, 1)), neg(f.mul(g(0, 1), minor(0, 2, 2, 0)))),
                f.mul(g(0, 2), minor(0, 1, 1, 0)));
  }
  if (det == 0) throw RzError("hermitian form is degenerate");
}

int FiniteHermitianSpace::form(const IntVec& x, const IntVec& y) const {
  int acc = 0;
  for (int i = 0; i < n_; ++i) {
    const int cx = conj(x[i]);
    for (int j = 0; j < n_; ++j) acc = field_.add(acc, field_.mul(cx, field_.mul(gram_[i * n_ + j], y[j])));
  }
  return acc;
}

namespace {

// Calls fn on each normalized vector (first nonzero coordinate 1) in F^n.
template <class Fn>
void for_each_projective_point(int order, int n, Fn&& fn) {
  for (int lead = 0; lead < n; ++lead) {
    IntVec v(n, 0);
    v[lead] = 1;
    const int free = n - lead - 1;
    long long total = 1;
    for (int i = 0; i < free; ++i) total *= order;
    for (long long idx = 0; idx < total; ++idx) {
      long long r = idx;
      for (int i = lead + 1; i < n; ++i, r /= order) v[i] = static_cast<int>(r % order);
      fn(v);
    }
  }
}

}  // namespace

long long isotropic_lines(const FiniteHermitianSpace& space) {
  long long count = 0;
  for_each_projective_point(space.field().order(), space.dimension(), [&](const IntVec& v) {
    if (space.form(v, v) == 0) ++count;
  });
  return count;
}

long long projective_line_points(int q) {
  if (!prime_power(q) || q > 16) throw RzError("projective_line_points needs a prime power q <= 16");
  long long count = 0;
  for_each_projective_point(q, 2, [&](const IntVec&) { ++count; });
  return count;
}

FlagCheck verify_flag_polynomial(FlagPair pair, int q) {
  if (!prime_power(q) || q > 9) throw RzError("verify_flag_polynomial needs a prime power q <= 9");
  FlagCheck out;
  if (pair == FlagPair::A1Identity) {
    auto g = AffineWeylGroup::single(Family::A, 1);
    out.polynomial = flag_fixed_point_poly(*g, bit(1), {0, 1});
    out.counted = projective_line_points(q);
  } else {
    // W_K of type A2 inside the affine A2 diagram, with the flip s1 <-> s2.
    auto g = AffineWeylGroup::single(Family::A, 2);
    out.polynomial = flag_fixed_point_poly(*g, bit(1) | bit(2), {0, 2, 1});
    out.counted = isotropic_lines(FiniteHermitianSpace(q, 3));
  }
  out.predicted = out.polynomial.evaluate(q);
  return out;
}

}  // namespace rzcomb
