#include <doctest.h>

#include "oracles.hpp"

using namespace rzcomb;

TEST_CASE("sigma validation") {
  auto a2 = AffineDynkinComponent::build(Family::A, 2);
  auto g = AffineWeylGroup::single(Family::A, 2);
  CHECK_NOTHROW(CoxeterDatum(g, sigma_identity(a2), {{1, 0}}));
  CoxeterDatum gu3(g, sigma_varsigma0(a2), {{1, 0}});
  CHECK(gu3.sigma() == NodePerm{0, 2, 1});
  CHECK(parse_sigma(a2, "varsigma0") == NodePerm{0, 2, 1});
  CHECK(parse_sigma(a2, "rho1") == NodePerm{1, 2, 0});
  CHECK(parse_sigma(a2, "rho1*varsigma0") == compose_perm(NodePerm{1, 2, 0}, NodePerm{0, 2, 1}));
  // Any transposition of Ã2 is a diagram automorphism.
  CHECK(is_component_automorphism(a2, {1, 0, 2}));
  auto c2 = AffineDynkinComponent::build(Family::C, 2);
  CHECK_FALSE(is_component_automorphism(c2, {1, 0, 2}));
  CHECK(is_component_automorphism(c2, {2, 1, 0}));
  CHECK_THROWS_AS(CoxeterDatum(AffineWeylGroup::single(Family::C, 2), {1, 0, 2}, {{0, 1}}), RzError);
  CHECK_THROWS_AS(parse_sigma(c2, "varsigma0"), RzError);
  CHECK_THROWS_AS(parse_sigma(a2, "frobenius"), RzError);
  // Every automorphism found by the component preserves the Coxeter matrix.
  for (auto [f, r] : std::vector<std::pair<Family, int>>{{Family::A, 3}, {Family::B, 3}, {Family::C, 3}, {Family::D, 4}}) {
    auto c = AffineDynkinComponent::build(f, r);
    for (const auto& p : c.diagram_automorphisms())
      for (int i = 0; i < c.num_nodes(); ++i)
        for (int j = 0; j < c.num_nodes(); ++j) CHECK(c.coxeter(p[i], p[j]) == c.coxeter(i, j));
  }
  CHECK(AffineDynkinComponent::build(Family::D, 4).diagram_automorphisms().size() == 24);
  CHECK(AffineDynkinComponent::build(Family::A, 3).diagram_automorphisms().size() == 8);
}

TEST_CASE("tau(mu) and Ad(tau)") {
  CoxeterDatum gu3 = oracle::datum(Family::A, 2, "varsigma0", {1, 0});
  const auto& g = gu3.group();
  CHECK(g.format(gu3.tau()) == "tau1");
  CHECK(g.length(gu3.tau()) == 0);
  // W_a t^mu = W_a tau: t^mu tau^-1 is a product of simple reflections.
  Element rest = g.multiply(g.translation({1, 0}), g.inverse(gu3.tau()));
  CHECK(g.omega_indices(rest) == IntVec{0});
  CHECK(gu3.ad_tau() == NodePerm{1, 2, 0});
  // Ad(tau) o sigma swaps s0 and s1 and fixes s2.
  CHECK(gu3.ad_tau_sigma() == NodePerm{1, 0, 2});
}

TEST_CASE("sigma-support") {
  CoxeterDatum gu3 = oracle::datum(Family::A, 2, "varsigma0", {1, 0});
  CoxeterDatum lt = oracle::datum(Family::A, 2, "id", {1, 0});
  const auto& g = gu3.group();
  CHECK(sigma_support(gu3, gu3.tau()) == 0);
  CHECK(sigma_support(gu3, g.parse("s1 s0 . tau1")) == (bit(0) | bit(1)));
  CHECK(sigma_support(lt, g.parse("s0 . tau1")) == g.all_nodes());
  // Minimal Ad(tau) o sigma-stable superset of the support, by direct closure.
  for (const auto& d : {gu3, lt, oracle::datum(Family::A, 2, "rho2", {1, 0})}) {
    for (const auto& [w, len] : oracle::word_ball(g, 4)) {
      const NodeMask s = sigma_support(d, w);
      const NodeMask supp = g.support(w);
      CHECK((s & supp) == supp);
      NodePerm f = compose_perm(g.ad_omega(g.omega_indices(w)), d.sigma());
      CHECK(apply_perm(f, s) == s);
      NodeMask closure = supp;
      for (int k = 0; k < 4; ++k) closure |= apply_perm(f, closure);
      CHECK(closure == s);
    }
  }
}

TEST_CASE("support is independent of the reduced word") {
  for (auto [f, r] : std::vector<std::pair<Family, int>>{{Family::A, 3}, {Family::C, 2}, {Family::B, 3}}) {
    auto g = AffineWeylGroup::single(f, r);
    for (const auto& [w, len] : oracle::word_ball(*g, 4)) {
      NodeMask lo = 0, hi = 0;
      for (int s : oracle::greedy_word(*g, w, false)) lo |= bit(s);
      for (int s : oracle::greedy_word(*g, w, true)) hi |= bit(s);
      CHECK(lo == hi);
      CHECK(g->support(w) == lo);
    }
  }
}

TEST_CASE("finite sigma-support iff a fixed point in the closed alcove") {
  for (const auto& d : {oracle::datum(Family::A, 2, "varsigma0", {1, 0}), oracle::datum(Family::A, 3, "rho2", {0, 1, 0}),
                        oracle::datum(Family::C, 2, "ad_tau2", {0, 1}), oracle::datum(Family::A, 3, "id", {1, 0, 1}),
                        oracle::datum(Family::B, 3, "id", {1, 0, 0})}) {
    CAPTURE(d.summary());
    const auto& g = d.group();
    AdmissibleSet adm = AdmissibleSet::enumerate(d);
    for (const auto& x : adm.elements())
      CHECK(g.is_finite_parabolic(sigma_support(d, x)) == fixes_point_of_closed_alcove(d, x));
  }
}

TEST_CASE("restriction of scalars") {
  auto a1 = AffineDynkinComponent::build(Family::A, 1);
  CoxeterDatum stamm = restrict_scalars(a1, sigma_identity(a1), 2, {{1}, {1}});
  const auto& g = stamm.group();
  CHECK(g.num_components() == 2);
  CHECK(format_cycles(g, stamm.sigma()) == "(s0 s0')(s1 s1')");
  // Ad(tau) swaps s0, s1 in each factor; composed with sigma: s0 <-> s1', s1 <-> s0'.
  CHECK(stamm.ad_tau_sigma() == NodePerm{3, 2, 1, 0});

  auto a2 = AffineDynkinComponent::build(Family::A, 2);
  CoxeterDatum drinfeld = restrict_scalars(a2, sigma_rho(a2, 2), 2, {{1, 0}, {0, 0}});
  CHECK(drinfeld.group().num_components() == 2);
  CHECK(drinfeld.component_permutation() == IntVec{1, 0});
  CHECK(sigma_power_local(drinfeld, 0, 2) == sigma_rho(a2, 2));
  CHECK(sigma_power_local(drinfeld, 1, 2) == sigma_rho(a2, 2));

  CoxeterDatum one = restrict_scalars(a2, sigma_varsigma0(a2), 1, {{1, 0}});
  CoxeterDatum direct = oracle::datum(Family::A, 2, "varsigma0", {1, 0});
  CHECK(one.sigma() == direct.sigma());
  CHECK(one.tau() == direct.tau());
  CHECK_THROWS_AS(restrict_scalars(a2, {1, 0, 2, 3}, 2, {{1, 0}, {0, 0}}), RzError);
}

TEST_CASE("collapse of restriction of scalars") {
  auto a2 = AffineDynkinComponent::build(Family::A, 2);
  CoxeterDatum elt = restrict_scalars(a2, sigma_identity(a2), 2, {{1, 0}, {0, 0}});
  CollapsedDatum c = collapse_restriction(elt, 0);
  CHECK(c.degree == 2);
  CHECK(c.source_component == 0);
  CHECK(c.inner.sigma() == sigma_identity(a2));
  CHECK(c.inner.mu_dominant()[0] == IntVec{1, 0});
  CHECK(c.inner.summary() == oracle::datum(Family::A, 2, "id", {1, 0}).summary());

  // Levels project to the source component.
  const NodeMask k = bit(1) | bit(4);  // s1 and s1'
  CHECK(elt.is_sigma_stable(k));
  CHECK(collapse_restriction(elt, k).level == bit(1));

  CoxeterDatum d1 = restrict_scalars(a2, sigma_varsigma0(a2), 1, {{1, 0}});
  CHECK(collapse_restriction(d1, 0).inner.summary() == d1.summary());

  auto a1 = AffineDynkinComponent::build(Family::A, 1);
  CoxeterDatum stamm = restrict_scalars(a1, sigma_identity(a1), 2, {{1}, {1}});
  CHECK_THROWS_AS(collapse_restriction(stamm, 0), RzError);
}

TEST_CASE("levels") {
  CoxeterDatum gu3 = oracle::datum(Family::A, 2, "varsigma0", {1, 0});
  CHECK_NOTHROW(gu3.check_level(bit(0), "K"));
  CHECK_THROWS_AS(gu3.check_level(bit(1), "K"), RzError);
  CHECK_THROWS_AS(gu3.check_level(gu3.group().all_nodes(), "K"), RzError);
  std::vector<NodeMask> expect{0, bit(0), bit(1) | bit(2)};
  auto got = gu3.sigma_stable_levels();
  std::sort(got.begin(), got.end());
  CHECK(got == expect);
  CHECK(gu3.format_mask(bit(1) | bit(2)) == "{s1, s2}");
}
