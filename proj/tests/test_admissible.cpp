#include <doctest.h>

#include "oracles.hpp"

using namespace rzcomb;

namespace {

std::set<Element> all_of(const AdmissibleSet& adm) { return {adm.elements().begin(), adm.elements().end()}; }

CoxeterDatum stamm() {
  auto a1 = AffineDynkinComponent::build(Family::A, 1);
  return restrict_scalars(a1, sigma_identity(a1), 2, {{1}, {1}});
}

std::vector<CoxeterDatum> small_corpus() {
  return {oracle::datum(Family::A, 2, "varsigma0", {1, 0}), oracle::datum(Family::A, 2, "id", {1, 1}),
          oracle::datum(Family::A, 3, "id", {0, 1, 0}),     oracle::datum(Family::A, 3, "rho1", {2, 0, 0}),
          oracle::datum(Family::C, 2, "id", {1, 0}),        oracle::datum(Family::C, 2, "ad_tau2", {0, 1}),
          oracle::datum(Family::B, 3, "id", {1, 0, 0}),     oracle::datum(Family::D, 4, "id", {1, 0, 0, 0}),
          oracle::datum(Family::A, 1, "id", {2}),           stamm()};
}

}  // namespace

TEST_CASE("GU3 admissible set") {
  CoxeterDatum d = oracle::datum(Family::A, 2, "varsigma0", {1, 0});
  const auto& g = d.group();
  AdmissibleSet adm = AdmissibleSet::enumerate(d);
  CHECK(adm.size() == 7);
  CHECK(all_of(adm) == oracle::parse_all(g, {"tau1", "s0 . tau1", "s1 . tau1", "s2 . tau1", "s0 s2 . tau1",
                                               "s1 s0 . tau1", "s2 s1 . tau1"}));
  CHECK(oracle::as_set(adm, k_admissible_zero(adm, 0, d)) ==
        oracle::parse_all(g, {"tau1", "s0 . tau1", "s1 . tau1", "s2 . tau1", "s1 s0 . tau1"}));
  CHECK(oracle::as_set(adm, k_admissible(adm, bit(0))) ==
        oracle::parse_all(g, {"tau1", "s1 . tau1", "s2 . tau1", "s1 s0 . tau1", "s2 s1 . tau1"}));
  CHECK(oracle::as_set(adm, k_admissible_zero(adm, bit(0), d)) ==
        oracle::parse_all(g, {"tau1", "s1 . tau1", "s2 . tau1", "s1 s0 . tau1"}));
  CHECK(k_admissible(adm, 0).size() == 7);
  // Sorted by length.
  for (std::size_t i = 1; i < adm.size(); ++i) CHECK(adm.length(i - 1) <= adm.length(i));
}

TEST_CASE("central mu gives tau alone") {
  CoxeterDatum d = oracle::datum(Family::A, 2, "id", {0, 0});
  AdmissibleSet adm = AdmissibleSet::enumerate(d);
  CHECK(adm.size() == 1);
  CHECK(adm.elements()[0] == d.tau());
}

TEST_CASE("Stamm admissible set") {
  CoxeterDatum d = stamm();
  const auto& g = d.group();
  AdmissibleSet adm = AdmissibleSet::enumerate(d);
  const std::string t = " . tau1 tau1'";
  std::vector<std::string> words;
  for (std::string a : {"", "s0", "s1"})
    for (std::string b : {"", "s0'", "s1'"}) {
      std::string w = a + (a.empty() || b.empty() ? "" : " ") + b;
      words.push_back(w.empty() ? "tau1 tau1'" : w + t);
    }
  CHECK(adm.size() == 9);
  CHECK(all_of(adm) == oracle::parse_all(g, words));
  const NodeMask k = oracle::nodes(g, {"s0", "s0'"});
  CHECK(oracle::as_set(adm, k_admissible(adm, k)) ==
        oracle::parse_all(g, {"tau1 tau1'", "s1" + t, "s1'" + t, "s1 s1'" + t}));
  // The maximal elements of ^0 Adm_0 are the two length-2 elements with finite sigma-support.
  std::vector<Element> zero;
  for (int i : k_admissible_zero(adm, 0, d)) zero.push_back(adm.elements()[i]);
  auto maxi = maximal_elements(d, zero, 0);
  CHECK(std::set<Element>(maxi.begin(), maxi.end()) == oracle::parse_all(g, {"s0 s1'" + t, "s1 s0'" + t}));
  for (const auto& x : maxi) CHECK(g.length(x) == 2);
}

TEST_CASE("basic subset in the Lubin-Tate and Drinfeld cases") {
  CoxeterDatum lt = oracle::datum(Family::A, 2, "id", {1, 0});
  AdmissibleSet adm = AdmissibleSet::enumerate(lt);
  for (NodeMask k : lt.sigma_stable_levels()) CHECK(oracle::as_set(adm, k_admissible_zero(adm, k, lt)) == std::set{lt.tau()});
  CoxeterDatum dr = oracle::datum(Family::A, 2, "rho2", {1, 0});
  CHECK(dr.ad_tau_sigma() == sigma_identity(dr.group().component(0)));
  CHECK(k_admissible_zero(adm, 0, dr).size() == adm.size());
}

TEST_CASE("Adm agrees with the subword oracle") {
  for (const auto& d : small_corpus()) {
    CAPTURE(d.summary());
    AdmissibleSet adm = AdmissibleSet::enumerate(d);
    CHECK(all_of(adm) == oracle::admissible_by_subwords(d));
    for (std::size_t i = 0; i < adm.size(); ++i) {
      CHECK(adm.length(i) == d.group().length(adm.elements()[i]));
      CHECK(adm.support(i) == d.group().support(adm.elements()[i]));
      CHECK(adm.index_of(adm.elements()[i]) == static_cast<long>(i));
    }
  }
}

TEST_CASE("Kottwitz class, Omega conjugation and downward closure") {
  for (const auto& d : small_corpus()) {
    CAPTURE(d.summary());
    const auto& g = d.group();
    AdmissibleSet adm = AdmissibleSet::enumerate(d);
    const IntVec kappa = g.omega_indices(d.tau());
    for (const auto& x : adm.elements()) {
      CHECK(g.omega_indices(x) == kappa);
      CHECK(is_admissible(d, x));
      // Downward closed: every s x below x stays inside.
      for (int s = 0; s < g.num_nodes(); ++s) {
        Element y = g.multiply(g.simple(s), x);
        if (g.length(y) < g.length(x)) CHECK(adm.contains(y));
        else CHECK(adm.contains(y) == is_admissible(d, y));
      }
    }
    // Ad(tau') for tau' in Omega preserving W0(mu) maps Adm to itself.
    auto ball = oracle::word_ball(g, 0);
    std::set<IntVec> orbit(adm.orbit().begin(), adm.orbit().end());
    for (const auto& [tp, len] : ball) {
      bool keeps = true;
      for (const auto& lam : adm.orbit()) {
        Element c = g.multiply(g.multiply(tp, g.translation(lam)), g.inverse(tp));
        keeps = keeps && adm.contains(c);
      }
      if (!keeps) continue;
      for (const auto& x : adm.elements()) CHECK(adm.contains(g.multiply(g.multiply(tp, x), g.inverse(tp))));
    }
  }
}

TEST_CASE("K-refinement equals the double-coset description") {
  for (const auto& d : small_corpus()) {
    CAPTURE(d.summary());
    const auto& g = d.group();
    AdmissibleSet adm = AdmissibleSet::enumerate(d);
    for (NodeMask k : d.sigma_stable_levels()) {
      ParabolicSubgroup wk(g, k);
      std::set<Element> dc;
      for (const auto& x : adm.elements())
        for (const auto& a : wk.elements())
          for (const auto& b : wk.elements()) {
            Element y = g.multiply(g.multiply(a, x), b);
            if (g.is_K_minimal(y, k)) dc.insert(y);
          }
      CHECK(oracle::as_set(adm, k_admissible(adm, k)) == dc);
    }
  }
}

TEST_CASE("partial order") {
  CoxeterDatum gu3 = oracle::datum(Family::A, 2, "varsigma0", {1, 0});
  const auto& g = gu3.group();
  ParabolicSubgroup triv(g, 0), w0(g, bit(0));
  CHECK(w0.size() == 2);
  for (const auto& [w, len] : oracle::word_ball(g, 3)) {
    CHECK(preceq_K_sigma(gu3, w0, w, w));
    for (const auto& [v, l2] : oracle::word_ball(g, 2)) CHECK(preceq_K_sigma(gu3, triv, v, w) == g.bruhat_leq(v, w));
  }
  CHECK(preceq_K_sigma(gu3, w0, g.parse("tau1"), g.parse("s1 s0 . tau1")));
  CHECK_FALSE(preceq_K_sigma(gu3, w0, g.parse("s1 s0 . tau1"), g.parse("tau1")));
  // Conjugates are the x w sigma(x)^-1.
  auto conj = sigma_conjugates(gu3, w0, g.parse("s1 . tau1"));
  CHECK(conj.size() == 2);
}

TEST_CASE("maximal elements") {
  CoxeterDatum d = oracle::datum(Family::A, 3, "ad_tau2", {0, 1, 0});
  const auto& g = d.group();
  CHECK(g.format(d.tau()) == "tau2");
  AdmissibleSet adm = AdmissibleSet::enumerate(d);
  auto maxi = [&](NodeMask k) {
    std::vector<Element> zero;
    for (int i : k_admissible_zero(adm, k, d)) zero.push_back(adm.elements()[i]);
    auto m = maximal_elements(d, zero, k);
    return std::set<Element>(m.begin(), m.end());
  };
  CHECK(maxi(0) == oracle::parse_all(g, {"s2 s1 s3 s2 . tau2", "s3 s2 s0 s3 . tau2", "s0 s1 s3 s0 . tau2",
                                          "s1 s2 s0 s1 . tau2"}));
  for (const auto& x : maxi(0)) CHECK(std::count(adm.translations().begin(), adm.translations().end(), x) == 1);
  CHECK(maxi(oracle::nodes(g, {"s0", "s2"})) ==
        oracle::parse_all(g, {"s3 s2 s0 s3 . tau2", "s1 s2 s0 s1 . tau2", "s1 s3 s0 . tau2", "s1 s3 s2 . tau2"}));

  CoxeterDatum gu3 = oracle::datum(Family::A, 2, "varsigma0", {1, 0});
  AdmissibleSet a3 = AdmissibleSet::enumerate(gu3);
  std::vector<Element> zero;
  for (int i : k_admissible_zero(a3, 0, gu3)) zero.push_back(a3.elements()[i]);
  auto m = maximal_elements(gu3, zero, 0);
  CHECK(std::set<Element>(m.begin(), m.end()) == oracle::parse_all(gu3.group(), {"s2 . tau1", "s1 s0 . tau1"}));
  // Report order: length descending, then word.
  REQUIRE(m.size() == 2);
  CHECK(gu3.group().format(m[0]) == "s1 s0 . tau1");
}

TEST_CASE("budget") {
  CoxeterDatum d = oracle::datum(Family::A, 3, "id", {2, 0, 0});
  CHECK_THROWS_AS(AdmissibleSet::enumerate(d, Budget{4, 1000}), BudgetExceeded);
  CHECK_THROWS_AS(AdmissibleSet::enumerate(d, Budget{12, 10}), BudgetExceeded);
  CHECK_NOTHROW(AdmissibleSet::enumerate(d, Budget{12, 100000}));
}
