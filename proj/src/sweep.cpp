#include "rzcomb/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <map>
#include <set>
#include <unordered_set>

namespace rzcomb {

void CheckTally::fail(std::string what) {
  ++instances_;
  ++failures_;
  if (examples_.size() < 20) examples_.push_back(std::move(what));
}

void CheckTally::merge(const CheckTally& other) {
  instances_ += other.instances_;
  failures_ += other.failures_;
  for (const auto& e : other.examples_)
    if (examples_.size() < 20) examples_.push_back(e);
}

namespace {

const std::pair<const char*, CheckTally SweepResult::*> kTallies[] = {
    {"zero_dim", &SweepResult::zero_dim},
    {"discrete_fiber", &SweepResult::discrete_fiber},
    {"max_dim", &SweepResult::max_dim},
    {"equi_max", &SweepResult::equi_max},
    {"qrig_containment", &SweepResult::qrig_containment},
    {"qrig_equality", &SweepResult::qrig_equality},
    {"s_tau", &SweepResult::s_tau},
    {"full_support", &SweepResult::full_support},
    {"ss_tau", &SweepResult::ss_tau},
    {"translation_crit", &SweepResult::translation_crit},
    {"w_fin_routes", &SweepResult::w_fin_routes},
    {"w_fin_quasisplit", &SweepResult::w_fin_quasisplit},
    {"dim_bound", &SweepResult::dim_bound},
    {"extreme_elements", &SweepResult::extreme_elements},
    {"crit_vs_support", &SweepResult::crit_vs_support},
    {"fibers", &SweepResult::fibers},
    {"collapse", &SweepResult::collapse},
};

}  // namespace

std::vector<std::pair<std::string, const CheckTally*>> SweepResult::tallies() const {
  std::vector<std::pair<std::string, const CheckTally*>> out;
  for (const auto& [name, field] : kTallies) out.emplace_back(name, &(this->*field));
  return out;
}

void SweepResult::merge(const SweepResult& other) {
  for (const auto& [name, field] : kTallies) (this->*field).merge(other.*field);
  data += other.data;
  levels += other.levels;
  level_pairs += other.level_pairs;
}

bool SweepResult::ok() const {
  for (const auto& [name, t] : tallies())
    if (!t->ok()) return false;
  return true;
}

namespace {

void dominant_coweights(const AffineDynkinComponent& c, int bound, IntVec& mu, int i, std::vector<IntVec>& out) {
  if (i == c.rank()) {
    const int v = c.pair_two_rho(mu);
    if (v > 0 && v <= bound) out.push_back(mu);
    return;
  }
  for (int a = 0;; ++a) {
    mu[i] = a;
    if (c.pair_two_rho(mu) > bound) break;  // pairing is monotone in each coordinate
    dominant_coweights(c, bound, mu, i + 1, out);
  }
  mu[i] = 0;
}

std::vector<IntVec> dominant_coweights(const AffineDynkinComponent& c, int bound) {
  std::vector<IntVec> out;
  IntVec mu(c.rank(), 0);
  dominant_coweights(c, bound, mu, 0, out);
  return out;
}

CorpusEntry make_entry(CoxeterDatum d, std::shared_ptr<const AdmissibleSet> adm = nullptr) {
  auto dp = std::make_shared<const CoxeterDatum>(std::move(d));
  if (!adm) adm = std::make_shared<const AdmissibleSet>(AdmissibleSet::enumerate(*dp));
  return {dp->summary(), dp, adm};
}

std::vector<NodeMask> ordered_levels(const CoxeterDatum& d) { return d.sigma_stable_levels(); }

std::string tag(const CoxeterDatum& d, NodeMask k) { return d.summary() + " K=" + d.format_mask(k); }
std::string tag(const CoxeterDatum& d, NodeMask k, NodeMask kp) { return tag(d, k) + " K'=" + d.format_mask(kp); }

bool is_a_omega1_shape(const CoxeterDatum& d) {
  const auto& c = d.group().component(0);
  if (c.family() != Family::A) return false;
  const IntVec& mu = d.mu_dominant()[0];
  IntVec a(c.rank(), 0), b(c.rank(), 0);
  a[0] = 1;
  b[c.rank() - 1] = 1;
  return mu == a || mu == b;
}

}  // namespace

std::vector<CorpusEntry> irreducible_corpus(int max_two_rho, int max_a_nodes) {
  std::vector<std::pair<Family, int>> shapes;
  for (int r = 1; r + 1 <= max_a_nodes; ++r) shapes.emplace_back(Family::A, r);
  shapes.insert(shapes.end(), {{Family::B, 3}, {Family::B, 4}, {Family::C, 2}, {Family::C, 3}, {Family::C, 4}, {Family::D, 4}});
  std::vector<CorpusEntry> out;
  for (auto [fam, rank] : shapes) {
    auto g = AffineWeylGroup::single(fam, rank);
    const auto& c = g->component(0);
    for (const IntVec& mu : dominant_coweights(c, max_two_rho)) {
      std::shared_ptr<const AdmissibleSet> adm;
      for (const NodePerm& sigma : c.diagram_automorphisms()) {
        CorpusEntry e = make_entry(CoxeterDatum(g, sigma, {mu}), adm);
        adm = e.adm;  // Adm depends on the group and mu only
        out.push_back(std::move(e));
      }
    }
  }
  return out;
}

std::vector<CorpusEntry> restriction_corpus() {
  std::vector<CorpusEntry> out;
  const std::vector<std::pair<Family, int>> inners{{Family::A, 1}, {Family::A, 2}, {Family::A, 3}, {Family::C, 2}};
  for (auto [fam, rank] : inners) {
    const auto c = AffineDynkinComponent::build(fam, rank);
    const IntVec zero(rank, 0);
    for (const NodePerm& sd : c.diagram_automorphisms())
      for (int deg : {2, 3})
        for (const IntVec& mu : dominant_coweights(c, 4)) {
          std::vector<IntVec> mus(deg, zero);
          mus[0] = mu;
          out.push_back(make_entry(restrict_scalars(c, sd, deg, mus)));
          if (deg == 2 && fam == Family::A && rank == 2) {
            std::swap(mus[0], mus[1]);
            out.push_back(make_entry(restrict_scalars(c, sd, deg, mus)));
          }
        }
  }
  // Two non-central factors.
  for (int rank : {1, 2, 3}) {
    const auto c = AffineDynkinComponent::build(Family::A, rank);
    std::vector<IntVec> minus;
    for (int i = 1; i <= rank; ++i) {
      IntVec v(rank, 0);
      v[i - 1] = 1;
      minus.push_back(v);
    }
    for (const NodePerm& sd : c.diagram_automorphisms())
      for (const IntVec& a : minus)
        for (const IntVec& b : minus) out.push_back(make_entry(restrict_scalars(c, sd, 2, {a, b})));
    IntVec w1(rank, 0), wl(rank, 0);
    w1[0] = 1;
    wl[rank - 1] = 1;
    out.push_back(make_entry(restrict_scalars(c, sigma_identity(c), 3, {w1, wl, IntVec(rank, 0)})));
    out.push_back(make_entry(restrict_scalars(c, sigma_identity(c), 3, {w1, IntVec(rank, 0), wl})));
  }
  return out;
}

Element project_to_component(const AffineWeylGroup& g, int component, const Element& x) {
  const int off = g.block_offset(component), len = g.component(component).block_size();
  return Element{IntVec(x.v.begin() + off, x.v.begin() + off + len)};
}

Element embed_component(const AffineWeylGroup& g, int component, const Element& x) {
  Element out = g.identity();
  std::copy(x.v.begin(), x.v.end(), out.v.begin() + g.block_offset(component));
  return out;
}

// ---------------------------------------------------------------------------

namespace {

// Verdict agreement and the checks shared by all data.
void sweep_verdicts(const CorpusEntry& e, VerdictContext& ctx, SweepResult& out) {
  const CoxeterDatum& d = *e.datum;
  const AffineWeylGroup& g = d.group();
  const AdmissibleSet& adm = *e.adm;
  const auto levels = ordered_levels(d);
  out.levels += levels.size();
  for (NodeMask k : levels) {
    if (ctx.hn().fully_hn()) {
      auto r = zero_dim_verdict(ctx, k);
      out.zero_dim.check(r.agree(), [&] { return tag(d, k) + ": zero_dim " + std::to_string(r.verdict) + " vs table"; });
    }
    auto md = max_dim_verdict(ctx, k);
    out.max_dim.check(md.agree(), [&] { return tag(d, k) + ": max_dim " + std::to_string(md.verdict) + " vs structural"; });
    auto eq = equi_max_verdict(ctx, k);
    out.equi_max.check(eq.agree(), [&] { return tag(d, k) + ": (*) " + std::to_string(eq.verdict) + " vs classification"; });

    int longest = 0;
    for (int i : ctx.k_adm_zero(k)) longest = std::max(longest, adm.length(i));
    out.dim_bound.check(longest <= d.two_rho(), [&] { return tag(d, k) + ": max length exceeds <mu,2rho>"; });

    auto fin = w_mu_K_fin(adm, k, d), fin_crit = w_mu_K_fin_by_critical(adm, k, d);
    bool routes = fin == fin_crit;
    for (const auto& lam : fin) {
      Element t = g.translation(lam);
      if (!is_minuscule(g, lam) || stable_critical_count(d, t) != 1) routes = false;
    }
    out.w_fin_routes.check(routes, [&] { return tag(d, k) + ": W(mu)_{K,fin} routes disagree"; });
    if (k == 0) {
      const bool qs = is_J_quasisplit(d) && is_minuscule(g, d.mu_dominant_flat());
      out.w_fin_quasisplit.check(qs == !fin.empty(), [&] { return tag(d, k) + ": W_fin vs quasi-split"; });
    }

    // Extreme elements of ^K Adm are the K-minimal translations.
    std::vector<Element> extreme, expected;
    for (int i : ctx.k_adm(k))
      if (adm.length(i) == d.two_rho()) extreme.push_back(adm.elements()[i]);
    bool each_orbit_meets = true;
    ParabolicSubgroup wk(g, k);
    for (const Element& t : adm.translations()) {
      if (g.is_K_minimal(t, k)) expected.push_back(t);
      bool meets = false;
      for (const Element& x : wk.elements())
        if (g.is_K_minimal(g.multiply(g.multiply(x, t), g.inverse(x)), k)) {
          meets = true;
          break;
        }
      each_orbit_meets = each_orbit_meets && meets;
    }
    std::sort(extreme.begin(), extreme.end());
    std::sort(expected.begin(), expected.end());
    out.extreme_elements.check(extreme == expected && each_orbit_meets,
                               [&] { return tag(d, k) + ": extreme elements are not the K-minimal translations"; });
  }
  for (NodeMask k : levels)
    for (NodeMask kp : levels) {
      if ((k & ~kp) != 0 || k == kp) continue;
      ++out.level_pairs;
      auto r = discrete_fiber_verdict(ctx, k, kp);
      out.discrete_fiber.check(r.agree(), [&] {
        return tag(d, k, kp) + ": discrete fibers " + std::to_string(r.verdict) + " vs structural " +
               std::to_string(r.structural) + " (" + r.witness.kind + ")";
      });
      if (in_discrete_fiber_situation(d, k, kp)) {
        FiberReport rep = fiber_cardinality_table(ctx, k, kp);
        out.fibers.check(rep.ok(), [&] { return tag(d, k, kp) + ": " + (rep.failures.empty() ? "" : rep.failures[0]); });
      }
    }
}

}  // namespace

void sweep_irreducible_entry(const CorpusEntry& e, SweepResult& out) {
  const CoxeterDatum& d = *e.datum;
  const AffineWeylGroup& g = d.group();
  const AdmissibleSet& adm = *e.adm;
  VerdictContext ctx(d, e.adm);
  ++out.data;
  sweep_verdicts(e, ctx, out);

  for (NodeMask k : ordered_levels(d)) {
    QRigReport q = drinfeld_qrig_verdict(ctx, k);
    out.qrig_containment.check(q.containment.agree(), [&] {
      return tag(d, k) + ": containment " + std::to_string(q.containment.verdict) + " vs (A, w1) shape";
    });
    if (q.equality_checked && q.containment.structural)
      out.qrig_equality.check(q.equality, [&] {
        return tag(d, k) + ": Q-Rig window also holds " + (q.only_in_qrig.empty() ? "" : g.format(q.only_in_qrig[0]));
      });
  }

  // Properties that do not depend on sigma are checked once per (group, mu).
  if (d.sigma() != sigma_identity(g.component(0))) return;
  const Element& tau = d.tau();
  const NodeMask all = g.all_nodes();
  bool st = true;
  for (int s = 0; s < g.num_nodes(); ++s) st = st && adm.contains(g.lmul(s, tau));
  out.s_tau.check(st, [&] { return d.summary() + ": some s tau lies outside Adm"; });

  if (!is_a_omega1_shape(d)) {
    bool found = false;
    for (std::size_t i = 0; i < adm.size() && !found; ++i) found = adm.support(i) == all;
    out.full_support.check(found, [&] { return d.summary() + ": no element with full support"; });
    if (g.component(0).family() == Family::A) {
      bool ok = true;
      for (int s = 0; s < g.num_nodes(); ++s)
        for (int t = 0; t < g.num_nodes(); ++t) ok = ok && adm.contains(g.lmul(s, g.lmul(t, tau)));
      out.ss_tau.check(ok, [&] { return d.summary() + ": some s s' tau lies outside Adm"; });
    }
  }

  bool crit_ok = true;
  for (std::size_t i = 0; i < adm.size(); ++i) {
    const bool finite = g.is_finite_parabolic(adm.support(i));
    if (critical_indices(g, adm.elements()[i]).empty() == finite) crit_ok = false;
  }
  out.crit_vs_support.check(crit_ok, [&] { return d.summary() + ": Crit nonempty differs from finite support"; });

  for (std::size_t i = 0; i < adm.orbit().size(); ++i) {
    const Element& t = adm.translations()[i];
    if (!is_quasi_rigid(g, t)) continue;
    CriticalIndexSet crit = critical_indices(g, t);
    const bool ok = crit.count() == 1 && crit.per_component[0][0].special && g.component(0).is_minuscule(adm.orbit()[i]);
    out.translation_crit.check(ok, [&] { return d.summary() + ": translation " + g.format(t) + " breaks the critical-index shape"; });
  }
}

void sweep_restriction_entry(const CorpusEntry& e, SweepResult& out) {
  const CoxeterDatum& d = *e.datum;
  const AffineWeylGroup& g = d.group();
  VerdictContext ctx(d, e.adm);
  ++out.data;
  sweep_verdicts(e, ctx, out);
  if (d.non_central_count() != 1) return;

  // Collapse commutation.
  CollapsedDatum base = collapse_restriction(d, 0);
  const int src = base.source_component, deg = base.degree;
  auto inner = std::make_shared<const CoxeterDatum>(base.inner);
  auto inner_adm = std::make_shared<const AdmissibleSet>(AdmissibleSet::enumerate(*inner));
  VerdictContext ictx(*inner, inner_adm);
  const auto levels = ordered_levels(d);
  auto same = [](const VerdictReport& a, const VerdictReport& b) {
    return a.defined == b.defined && a.verdict == b.verdict && a.structural == b.structural;
  };
  for (NodeMask k : levels) {
    const NodeMask k1 = collapse_restriction(d, k).level;
    bool ok = ctx.hn().fully_hn() == ictx.hn().fully_hn();
    if (ctx.hn().fully_hn()) ok = ok && same(zero_dim_verdict(ctx, k), zero_dim_verdict(ictx, k1));
    ok = ok && same(max_dim_verdict(ctx, k), max_dim_verdict(ictx, k1));
    ok = ok && same(equi_max_verdict(ctx, k), equi_max_verdict(ictx, k1));
    std::set<Element> full, collapsed;
    for (int i : ctx.k_adm_zero(k)) full.insert(project_to_component(g, src, e.adm->elements()[i]));
    for (int i : ictx.k_adm_zero(k1)) collapsed.insert(inner_adm->elements()[i]);
    ok = ok && full == collapsed;
    out.collapse.check(ok, [&] { return tag(d, k) + ": verdicts or ^K Adm_0 change under collapse"; });
  }
  for (NodeMask k : levels)
    for (NodeMask kp : levels) {
      if ((k & ~kp) != 0 || k == kp) continue;
      const NodeMask k1 = collapse_restriction(d, k).level, k1p = collapse_restriction(d, kp).level;
      bool ok = same(discrete_fiber_verdict(ctx, k, kp), discrete_fiber_verdict(ictx, k1, k1p));
      if (in_discrete_fiber_situation(d, k, kp)) {
        ok = ok && in_discrete_fiber_situation(*inner, k1, k1p);
        for (int i : ctx.k_adm_zero(k)) {
          const Element& w = e.adm->elements()[i];
          Element up = pi_prime(d, w, kp);
          Element down = pi_prime(*inner, project_to_component(g, src, w), k1p);
          ok = ok && up == embed_component(g, src, down);
        }
        FiberReport a = fiber_cardinality_table(ctx, k, kp), b = fiber_cardinality_table(ictx, k1, k1p);
        ok = ok && a.rows.size() == b.rows.size();
        for (std::size_t r = 0; ok && r < a.rows.size(); ++r)
          ok = project_to_component(g, src, a.rows[r].w_prime) == b.rows[r].w_prime &&
               a.rows[r].total == b.rows[r].total.substitute_power(deg);
      }
      out.collapse.check(ok, [&] { return tag(d, k, kp) + ": fiber data change under collapse"; });
    }
}

namespace {

int thread_count(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("RZCOMB_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

// Entries run in parallel; results are merged in corpus order so reports stay deterministic.
template <class Worker>
void run_parallel(const std::vector<CorpusEntry>& corpus, int threads, Worker worker, SweepResult& out) {
  std::vector<SweepResult> parts(corpus.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto loop = [&] {
    for (std::size_t i; (i = next++) < corpus.size();) {
      try {
        worker(corpus[i], parts[i]);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(loop);
  loop();
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
  for (const auto& p : parts) out.merge(p);
}

}  // namespace

SweepResult run_sweep(const SweepOptions& opts) {
  SweepResult out;
  auto note = [&](const std::string& s) {
    if (opts.progress) opts.progress(s);
  };
  const int threads = thread_count(opts.threads);
  if (opts.irreducible) {
    auto corpus = irreducible_corpus(opts.max_two_rho, opts.max_a_nodes);
    note("irreducible corpus: " + std::to_string(corpus.size()) + " data");
    run_parallel(corpus, threads, sweep_irreducible_entry, out);
  }
  if (opts.restriction) {
    auto corpus = restriction_corpus();
    note("restriction corpus: " + std::to_string(corpus.size()) + " data");
    run_parallel(corpus, threads, sweep_restriction_entry, out);
  }
  return out;
}

}  // namespace rzcomb
