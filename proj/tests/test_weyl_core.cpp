#include <doctest.h>

#include "oracles.hpp"

using namespace rzcomb;

namespace {

std::vector<std::pair<Family, int>> small_types() {
  return {{Family::A, 1}, {Family::A, 2}, {Family::A, 3}, {Family::B, 3}, {Family::C, 2}, {Family::C, 3}, {Family::D, 4}};
}

// Linear parts generated by the finite simple reflections.
std::vector<Element> finite_weyl_group(const AffineWeylGroup& g) {
  std::set<Element> seen{g.identity()};
  std::vector<Element> out{g.identity()};
  for (std::size_t i = 0; i < out.size(); ++i)
    for (int s = 1; s < g.num_nodes(); ++s) {
      Element x = g.multiply(g.simple(s), out[i]);
      if (seen.insert(x).second) out.push_back(x);
    }
  return out;
}

}  // namespace

TEST_CASE("component realizations") {
  for (auto [f, r] : small_types()) {
    auto c = AffineDynkinComponent::build(f, r);
    CAPTURE(c.name());
    for (int i = 0; i < c.num_nodes(); ++i) {
      CHECK(c.coxeter(i, i) == 1);
      for (int j = 0; j < c.num_nodes(); ++j) {
        CHECK(c.coxeter(i, j) == c.coxeter(j, i));
        if (i != j && !(f == Family::A && r == 1)) CHECK((c.coxeter(i, j) >= 2 && c.coxeter(i, j) <= 4));
      }
    }
    // Ã1 has an infinite bond, stored as 0.
    if (f == Family::A && r == 1) CHECK(c.coxeter(0, 1) == 0);
  }
  CHECK(AffineDynkinComponent::build(Family::A, 2).omega_size() == 3);
  CHECK(AffineDynkinComponent::build(Family::C, 2).omega_size() == 2);
  CHECK(AffineDynkinComponent::build(Family::D, 4).omega_size() == 4);
  CHECK_THROWS_AS(AffineDynkinComponent::build(Family::D, 3), RzError);
  CHECK_THROWS_AS(AffineDynkinComponent::build(Family::A, 0), RzError);
}

TEST_CASE("Omega by brute force over alcove stabilizers") {
  for (auto [f, r] : std::vector<std::pair<Family, int>>{{Family::A, 2}, {Family::C, 2}, {Family::B, 3}, {Family::D, 4}}) {
    auto g = AffineWeylGroup::single(f, r);
    CAPTURE(g->component(0).name());
    auto w0 = finite_weyl_group(*g);
    int stabilizers = 0;
    IntVec lam(r, -2);
    for (;;) {
      Element t = g->translation(lam);
      for (const auto& u : w0)
        if (oracle::separating_hyperplanes(*g, g->multiply(t, u)) == 0) ++stabilizers;
      int i = 0;
      while (i < r && ++lam[i] > 2) lam[i++] = -2;
      if (i == r) break;
    }
    CHECK(stabilizers == g->component(0).omega_size());
  }
}

TEST_CASE("affine reflection s0 is t^beta s_beta") {
  for (auto [f, r] : small_types()) {
    auto g = AffineWeylGroup::single(f, r);
    const auto& c = g->component(0);
    CAPTURE(c.name());
    // s_beta: the finite element acting as v -> v - <v, beta> beta^vee.
    IntVec beta(r, 0);
    for (int i = 0; i < r; ++i) beta[i] = c.marks()[i];
    const IntVec& bv = c.highest_coroot();
    Element s_beta;
    bool found = false;
    for (const auto& u : finite_weyl_group(*g)) {
      bool ok = true;
      for (int k = 0; k < r && ok; ++k) {
        std::vector<long long> e(r, 0);
        e[k] = 1;
        auto img = g->apply_scaled(u, e, 1);
        for (int i = 0; i < r; ++i) ok = ok && img[i] == e[i] - beta[k] * bv[i];
      }
      if (ok) s_beta = u, found = true;
    }
    REQUIRE(found);
    CHECK(g->multiply(g->translation(bv), s_beta) == g->simple(0));
  }
}

TEST_CASE("multiplication basics") {
  auto g = AffineWeylGroup::single(Family::A, 2);
  Element w = g->parse("s1 s0 s2 . tau1");
  CHECK(g->multiply(w, g->identity()) == w);
  CHECK(g->multiply(g->simple(0), g->simple(0)) == g->identity());
  CHECK(g->multiply(g->translation({1, 0}), g->translation({0, 1})) == g->translation({1, 1}));
  CHECK(g->multiply(w, g->inverse(w)) == g->identity());
}

TEST_CASE("length against shortest words and hyperplane counts") {
  for (auto [f, r] : small_types()) {
    auto g = AffineWeylGroup::single(f, r);
    CAPTURE(g->component(0).name());
    const int radius = r >= 3 ? 4 : 6;
    for (const auto& [w, dist] : oracle::word_ball(*g, radius)) {
      CHECK(g->length(w) == dist);
      CHECK(oracle::separating_hyperplanes(*g, w) == dist);
      ReducedWord rw = g->reduced_word(w);
      CHECK(static_cast<int>(rw.letters.size()) == dist);
      CHECK(g->word_element(rw.letters, rw.tail) == w);
      CHECK(g->length(rw.tail) == 0);
    }
  }
  auto g = AffineWeylGroup::single(Family::A, 2);
  CHECK(g->length(g->identity()) == 0);
  CHECK(g->length(g->translation({1, 0})) == 2);
  CHECK(g->length(g->parse("s1 s0 . tau1")) == 2);
  ReducedWord rw = g->reduced_word(g->translation({1, 0}));
  CHECK(rw.letters.size() == 2);
  CHECK(g->format(rw.tail) == "tau1");
}

TEST_CASE("translations act by +lambda and have length <lambda, 2rho>") {
  for (auto [f, r] : small_types()) {
    auto g = AffineWeylGroup::single(f, r);
    const auto& c = g->component(0);
    IntVec lam(r, 0);
    for (int i = 0; i < r; ++i) lam[i] = (i % 3) - 1 + (i == 0 ? 2 : 0);
    std::vector<long long> p(r);
    for (int i = 0; i < r; ++i) p[i] = 3 * i + 1;
    auto img = g->apply_scaled(g->translation(lam), p, 5);
    for (int i = 0; i < r; ++i) CHECK(img[i] == p[i] + 5 * lam[i]);
    // Root-sum pairing for dominant coweights.
    for (int i = 0; i < r; ++i) {
      IntVec w(r, 0);
      w[i] = 1;
      int sum = 0;
      for (const auto& a : c.positive_roots()) sum += a[i];
      CHECK(g->length(g->translation(w)) == sum);
      CHECK(c.pair_two_rho(w) == sum);
    }
  }
}

TEST_CASE("length identities on random elements") {
  std::mt19937 rng(20240611);
  for (auto [f, r] : small_types()) {
    auto g = AffineWeylGroup::single(f, r);
    const auto& c = g->component(0);
    std::uniform_int_distribution<int> letter(0, g->num_nodes() - 1), len(0, 8), om(0, c.omega_size() - 1);
    auto random_element = [&] {
      Element w = g->omega_element({om(rng)});
      for (int k = len(rng); k > 0; --k) w = g->multiply(g->simple(letter(rng)), w);
      return w;
    };
    for (int trial = 0; trial < 200; ++trial) {
      Element a = random_element(), b = random_element();
      Element tau = g->omega_element({om(rng)});
      CHECK(g->length(g->multiply(a, b)) <= g->length(a) + g->length(b));
      CHECK(g->length(g->inverse(a)) == g->length(a));
      CHECK(g->length(g->multiply(a, tau)) == g->length(a));
      // Ad(tau) preserves length and the Bruhat order.
      Element ca = g->multiply(g->multiply(tau, a), g->inverse(tau));
      Element cb = g->multiply(g->multiply(tau, b), g->inverse(tau));
      CHECK(g->length(ca) == g->length(a));
      CHECK(g->bruhat_leq(a, b) == g->bruhat_leq(ca, cb));
    }
  }
}

TEST_CASE("Bruhat order against subwords") {
  std::mt19937 rng(7);
  for (auto [f, r] : std::vector<std::pair<Family, int>>{{Family::A, 2}, {Family::C, 2}, {Family::A, 3}, {Family::D, 4}}) {
    auto g = AffineWeylGroup::single(f, r);
    CAPTURE(g->component(0).name());
    auto ball = oracle::word_ball(*g, 4);
    std::vector<Element> all;
    for (const auto& [w, d] : ball) all.push_back(w);
    std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
    for (int trial = 0; trial < 30; ++trial) {
      Element b = all[pick(rng)];
      for (int k = 0; k < 8 && g->length(b) < 8; ++k) b = g->multiply(g->simple(k % g->num_nodes()), b);
      ReducedWord rw = g->reduced_word(b);
      if (rw.letters.size() > 8) continue;
      auto below = oracle::subword_products(*g, rw.letters, rw.tail);
      for (const auto& a : all) CHECK(g->bruhat_leq(a, b) == (below.count(a) != 0));
      for (const auto& a : below) {
        CHECK(g->bruhat_leq(a, b));
        CHECK(g->length(a) <= g->length(b));
      }
    }
  }
  auto g = AffineWeylGroup::single(Family::A, 2);
  CHECK(g->bruhat_leq(g->parse("tau1"), g->parse("s0 . tau1")));
  CHECK_FALSE(g->bruhat_leq(g->parse("s0 s1 . tau1"), g->translation({1, 0})));
  // Different Omega parts are incomparable.
  CHECK_FALSE(g->bruhat_leq(g->parse("tau1"), g->parse("s0 s1 . tau2")));
}

TEST_CASE("descents and K-minimality") {
  auto g = AffineWeylGroup::single(Family::A, 2);
  Element tau = g->parse("tau1");
  for (NodeMask k : {NodeMask{0}, bit(0), bit(1) | bit(2), bit(0) | bit(1)}) CHECK(g->is_K_minimal(tau, k));
  CHECK_FALSE(g->is_K_minimal(g->parse("s0 . tau1"), bit(0)));
  CHECK(g->is_K_minimal(g->parse("s1 s0 . tau1"), bit(0)));
  for (const auto& [w, d] : oracle::word_ball(*g, 4))
    for (int s = 0; s < 3; ++s) CHECK(g->left_descent(w, s) == (g->length(g->multiply(g->simple(s), w)) < d));
}

TEST_CASE("Kottwitz class at the Omega level") {
  auto g = AffineWeylGroup::single(Family::A, 2);
  const auto& c = g->component(0);
  CHECK(g->omega_indices(g->translation({0, 0})) == IntVec{0});
  CHECK(c.omega_label(g->omega_indices(g->translation({1, 0}))[0]) == 1);
  CHECK(g->omega_indices(g->parse("s1 s0 . tau1")) == g->omega_indices(g->parse("tau1")));
  // Class map is a homomorphism on translations.
  for (int a = -2; a <= 2; ++a)
    for (int b = -2; b <= 2; ++b) {
      Element t = g->translation({a, b});
      const int label = c.omega_label(g->omega_indices(t)[0]);
      CHECK(label == ((a + 2 * b) % 3 + 3) % 3);
    }
}

TEST_CASE("word parsing and formatting") {
  auto c = AffineDynkinComponent::build(Family::A, 1);
  CoxeterDatum d = restrict_scalars(c, sigma_identity(c), 2, {{1}, {1}});
  const auto& g = d.group();
  Element x = g.parse("s0 s1' . tau1 tau1'");
  CHECK(g.format(x) == "s0 s1' . tau1 tau1'");
  CHECK(g.length(x) == 2);
  CHECK(g.parse_node("s1'") == 3);
  CHECK(g.parse_node("s7") == -1);
  CHECK_THROWS_AS(g.parse("s0 . tau9"), RzError);
}
