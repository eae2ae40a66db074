// Acceptance suite: one line per criterion, nonzero exit if any fails.
//
//   acceptance            run every criterion
//   acceptance 2 3 10     run a subset

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "ubqp/bounds.hpp"
#include "ubqp/energy.hpp"
#include "ubqp/experiments.hpp"
#include "ubqp/format.hpp"
#include "ubqp/instance.hpp"
#include "ubqp/measures.hpp"
#include "ubqp/parallel.hpp"
#include "ubqp/rng.hpp"
#include "ubqp/solvers.hpp"

using namespace ubqp;

namespace {

const std::vector<double> kBetaGrid = {0.3, 0.7, 1.1, 1.5, 1.9, 2.3};
const std::vector<double> kQGrid = {0.5, 1.0, 1.5, 2.0, 2.5};

struct Outcome {
  bool pass = true;
  std::string detail;

  // Records one check; the criterion passes only if every check does.
  void check(bool ok, const std::string& what) {
    pass = pass && ok;
    if (!detail.empty()) detail += "; ";
    detail += (ok ? "" : "FAILED ") + what;
  }
};

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), pattern, a, b, c);
  return buf;
}

Outcome single_site_closed_forms() {
  StatsOptions o;
  o.n = 1;
  o.instances = 1000000;
  o.solver = SolverKind::exact;
  o.master_seed = 1;
  const StatsRow row = estimate_stats(o);
  Outcome out;
  out.check(std::abs(row.m_mean - 0.39894) <= 0.002, fmt("m_mean=%.5f (0.39894+-0.002)", row.m_mean));
  out.check(std::abs(row.m_var - 0.34085) <= 0.003, fmt("m_var=%.5f (0.34085+-0.003)", row.m_var));
  out.check(std::abs(row.alpha_mean - 0.5) <= 0.002, fmt("alpha_mean=%.5f (0.500+-0.002)", row.alpha_mean));
  return out;
}

Outcome bound_constants() {
  Outcome out;
  const BoundResult a = critical_m(RateFunction::annealed);
  const BoundResult c = critical_m(RateFunction::conditional);
  out.check(std::abs(a.m_star - 0.801) <= 0.001, fmt("annealed m*=%.5f (0.801+-0.001)", a.m_star));
  out.check(std::abs(a.alpha_star - 0.788) <= 0.002, fmt("alpha*=%.5f (0.788+-0.002)", a.alpha_star));
  out.check(std::abs(c.m_star - 0.562) <= 0.001, fmt("conditional m*=%.5f (0.562+-0.001)", c.m_star));
  out.check(std::abs(c.alpha_star - 0.644) <= 0.002, fmt("alpha*=%.5f (0.644+-0.002)", c.alpha_star));
  return out;
}

Outcome sandwich_regime() {
  Outcome out;
  for (double m : {0.60, 0.70, 0.78}) {
    const double f = maximize_over_alpha(RateFunction::annealed, m).value;
    const double f1 = maximize_over_alpha(RateFunction::conditional, m).value;
    out.check(f > 0.0 && f1 < 0.0, fmt("m=%.2f max F=%.4f max F1=%.4f", m, f, f1));
  }
  return out;
}

Outcome pca_stationarity() {
  double worst_residual = 0.0, worst_db = 0.0, weakest_control = INFINITY;
  for (std::size_t k = 0; k < 20; ++k) {
    const std::size_t n = 2 + k % 2;
    const double beta = kBetaGrid[k % kBetaGrid.size()];
    const double q = kQGrid[k % kQGrid.size()];
    const auto r = verify_pca_stationarity(generate_instance(n, 4000 + k), beta, q);
    worst_residual = std::max(worst_residual, r.max_residual);
    worst_db = std::max(worst_db, r.max_db_violation);
    const auto control = pca_balance_residuals(generate_raw_instance(n, 4000 + k), beta, q);
    weakest_control = std::min(weakest_control, control.max_db_violation);
  }
  Outcome out;
  out.check(worst_residual < 1e-12, fmt("max stationarity residual=%.2e (<1e-12)", worst_residual));
  out.check(worst_db < 1e-12, fmt("max detailed-balance violation=%.2e (<1e-12)", worst_db));
  out.check(weakest_control > 1e-6,
            fmt("asymmetric control min violation=%.2e (>1e-6)", weakest_control));
  return out;
}

Outcome metropolis_reversibility() {
  double worst = 0.0;
  for (std::size_t k = 0; k < 6; ++k) {
    worst = std::max(worst, metropolis_reversibility_violation(generate_instance(3, 5000 + k),
                                                                kBetaGrid[k]));
  }
  Outcome out;
  out.check(worst < 1e-12, fmt("max violation vs Gibbs=%.2e (<1e-12)", worst));
  return out;
}

Outcome oracle_equivalence() {
  constexpr std::size_t kInstances = 100;
  constexpr std::size_t kRestarts = 20;
  constexpr std::size_t kSweeps = 1000;
  std::vector<char> pca_hit(kInstances), met_hit(kInstances), dominance(kInstances);
  parallel_for(kInstances, 0, [&](std::size_t k) {
    const std::size_t n = 5 + k % 16;
    const Instance inst = generate_instance(n, 6000 + k);
    const double exact = exact_solve(inst).best_energy;
    double pca = INFINITY, met = INFINITY;
    std::size_t slot = 0;
    for (double beta : kBetaGrid) {
      for (std::size_t r = 0; r < kRestarts; ++r) {
        SolverParams p;
        p.beta = beta;
        p.sweeps = kSweeps;
        p.seed = derive_seed(inst.seed(), 1, slot++);
        met = std::min(met, metropolis_solve(inst, p).best_energy);
        for (double q : kQGrid) {
          p.q = q;
          p.seed = derive_seed(inst.seed(), 2, slot++);
          pca = std::min(pca, pca_solve(inst, p).best_energy);
        }
      }
    }
    const double greedy = greedy_solve(inst).best_energy;
    pca_hit[k] = std::abs(pca - exact) < 1e-9;
    met_hit[k] = std::abs(met - exact) < 1e-9;
    dominance[k] = exact <= pca + 1e-12 && exact <= met + 1e-12 && exact <= greedy + 1e-12 &&
                   pca <= 0.0 && met <= 0.0 && greedy <= 0.0;
  });
  const auto count = [](const std::vector<char>& v) {
    return static_cast<double>(std::count(v.begin(), v.end(), 1));
  };
  Outcome out;
  out.check(count(pca_hit) >= 90, fmt("PCA matches exact on %.0f/100 (>=90)", count(pca_hit)));
  out.check(count(met_hit) >= 90, fmt("Metropolis matches exact on %.0f/100 (>=90)", count(met_hit)));
  out.check(count(dominance) == 100,
            fmt("exact <= heuristics <= 0 on %.0f/100 (100)", count(dominance)));
  return out;
}

Outcome mid_size_means() {
  StatsOptions o;
  o.n = 50;
  o.instances = 400;
  o.runs = 3;
  o.solver = SolverKind::pca;
  o.master_seed = 50;
  const StatsRow row = estimate_stats(o);
  Outcome out;
  out.check(std::abs(row.m_mean - 0.418) <= 0.010, fmt("m_mean=%.5f (0.418+-0.010)", row.m_mean));
  out.check(std::abs(row.alpha_mean - 0.626) <= 0.010,
            fmt("alpha_mean=%.5f (0.626+-0.010)", row.alpha_mean));
  out.check(true, fmt("kept %.0f/%.0f, m_var=%.5f", row.instances_kept, row.instances_total,
                      row.m_var));
  return out;
}

Outcome concentration() {
  const std::vector<std::size_t> sizes = {8, 12, 32, 50};
  const auto rows = concentration_trend(sizes, 500, 3, SolverParams{}, 32);
  Outcome out;
  out.check(rows[2].m_var < rows[0].m_var / 2,
            fmt("Var(m_32)=%.5f < Var(m_8)/2=%.5f", rows[2].m_var, rows[0].m_var / 2));
  out.check(rows[3].m_var < rows[1].m_var / 2,
            fmt("Var(m_50)=%.5f < Var(m_12)/2=%.5f", rows[3].m_var, rows[1].m_var / 2));
  return out;
}

Outcome large_instances() {
  CompareOptions o;
  o.n = 500;
  o.restarts = 2;
  o.master_seed = 0;
  const ComparisonReport r = compare_solvers(o);
  Outcome out;
  for (const auto& row : r.rows) {
    out.check(row.m_pca >= 0.40 && row.m_pca <= 0.43,
              row.instance_id + fmt(" pca=%.5f met=%.5f greedy=%.5f", row.m_pca,
                                    row.m_metropolis, row.m_greedy));
  }
  out.check(std::abs(r.avg_pca - 0.4166) <= 0.01, fmt("avg pca=%.5f (0.4166+-0.01)", r.avg_pca));
  out.check(std::abs(r.avg_greedy - 0.387) <= 0.01,
            fmt("avg greedy=%.5f (0.387+-0.01)", r.avg_greedy));
  return out;
}

Outcome property_suite() {
  Outcome out;

  // Flip involution and incremental drift.
  double worst_involution = 0.0, worst_drift = 0.0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const std::size_t n = 20 + 30 * seed;
    const Instance inst = generate_instance(n, 7000 + seed);
    SplitMix64 rng(seed);
    std::vector<std::uint8_t> bits(n);
    for (auto& b : bits) b = static_cast<std::uint8_t>(rng.next() >> 63);
    Configuration cfg(bits);
    FieldCache cache = local_fields(inst, cfg);
    const Configuration start = cfg;
    for (std::size_t i = 0; i < n; ++i) {
      const double d1 = flip_delta(inst, cfg, cache, i);
      apply_flip(inst, cfg, cache, i);
      const double d2 = flip_delta(inst, cfg, cache, i);
      apply_flip(inst, cfg, cache, i);
      worst_involution = std::max(worst_involution, std::abs(d1 + d2));
      if (!(cfg == start)) worst_involution = INFINITY;
    }
    for (int t = 0; t < 1000; ++t) apply_flip(inst, cfg, cache, rng.below(n));
    const FieldCache fresh = local_fields(inst, cfg);
    worst_drift = std::max(worst_drift, std::abs(cache.energy - fresh.energy));
    for (std::size_t k = 0; k < n; ++k) {
      worst_drift = std::max(worst_drift, std::abs(cache.h[k] - fresh.h[k]));
    }
    const double direct = oracle::energy(inst, {cfg.bits().begin(), cfg.bits().end()});
    worst_drift = std::max(worst_drift, std::abs(cache.energy - direct));
  }
  out.check(worst_involution < 1e-10, fmt("flip involution err=%.2e (<1e-10)", worst_involution));
  out.check(worst_drift < 1e-8, fmt("incremental vs full after 1000 flips=%.2e (<1e-8)", worst_drift));

  // Row-stochasticity of the explicit PCA matrix.
  double worst_row = 0.0;
  for (std::size_t n = 1; n <= 10; ++n) {
    const std::uint64_t states = std::uint64_t{1} << n;
    const auto m = pca_transition_matrix(generate_instance(n, 7100 + n), 1.5, 1.0);
    for (std::uint64_t r = 0; r < states; ++r) {
      double s = 0.0;
      for (std::uint64_t c = 0; c < states; ++c) s += m[r * states + c];
      worst_row = std::max(worst_row, std::abs(s - 1.0));
    }
  }
  out.check(worst_row < 1e-12, fmt("PCA row sums max |1-sum|=%.2e (<1e-12)", worst_row));

  // Gibbs limit: TV(pi, pi_G) non-increasing along q = 0.5, 1, 2, 4, 8.
  bool monotone = true;
  double last_tv = 0.0;
  for (std::size_t n : {4u, 7u, 10u}) {
    const Instance inst = generate_instance(n, 7200 + n);
    for (double beta : {0.7, 1.5}) {
      const auto gibbs = gibbs_measure(inst, beta);
      double previous = INFINITY;
      for (double q : {0.5, 1.0, 2.0, 4.0, 8.0}) {
        const double tv = total_variation(pca_equilibrium_measure(inst, beta, q), gibbs);
        monotone = monotone && tv <= previous;
        previous = tv;
      }
      last_tv = std::max(last_tv, previous);
    }
  }
  out.check(monotone, fmt("TV(pi, pi_G) non-increasing in q; max TV at q=8: %.2e", last_tv));

  // Byte-identical reruns for any worker count.
  auto stats_csv = [](unsigned workers) {
    StatsOptions o;
    o.n = 30;
    o.instances = 16;
    o.runs = 2;
    o.params.sweeps = 300;
    o.master_seed = 99;
    o.workers = workers;
    std::ostringstream s;
    write_stats_csv(s, std::vector{estimate_stats(o)});
    return s.str();
  };
  auto compare_csv = [](unsigned workers) {
    CompareOptions o;
    o.n = 40;
    o.instance_ids = {"40a", "40b"};
    o.sweeps = 200;
    o.workers = workers;
    std::ostringstream s;
    write_comparison_csv(s, compare_solvers(o));
    return s.str();
  };
  const std::string s1 = stats_csv(1), c1 = compare_csv(1);
  bool identical = true;
  for (unsigned w : {1u, 2u, 4u, 7u}) {
    identical = identical && stats_csv(w) == s1 && compare_csv(w) == c1;
  }
  out.check(identical, "stats/compare output byte-identical for workers 1,2,4,7");
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "N=1 closed forms", single_site_closed_forms},
      {2, "bound constants", bound_constants},
      {3, "sandwich regime", sandwich_regime},
      {4, "PCA stationarity", pca_stationarity},
      {5, "Metropolis reversibility", metropolis_reversibility},
      {6, "oracle equivalence n<=20", oracle_equivalence},
      {7, "mean m and alpha at n=50", mid_size_means},
      {8, "concentration trend", concentration},
      {9, "solver comparison at n=500", large_instances},
      {10, "property suite", property_suite},
  };

  std::set<int> selected;
  for (int k = 1; k < argc; ++k) selected.insert(std::atoi(argv[k]));

  int failures = 0;
  for (const auto& c : criteria) {
    if (!selected.empty() && !selected.count(c.id)) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("[%s] criterion %d (%s): %s [%.1fs]\n", o.pass ? "PASS" : "FAIL", c.id,
                c.name, o.detail.c_str(), secs);
    std::fflush(stdout);
    failures += o.pass ? 0 : 1;
  }
  std::printf("%d criterion(s) failed\n", failures);
  return failures == 0 ? 0 : 1;
}
