#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "oracles.hpp"
#include "ubqp/errors.hpp"
#include "ubqp/rng.hpp"
#include "ubqp/solvers.hpp"

using namespace ubqp;

namespace {

const std::vector<double> kBetas = {0.3, 0.7, 1.1, 1.5, 1.9, 2.3};
const std::vector<double> kQs = {0.5, 1.0, 1.5, 2.0, 2.5};

void check_result_invariants(const Instance& inst, const SolveResult& r) {
  const double n = static_cast<double>(inst.size());
  CHECK(std::abs(r.best_energy - oracle::energy(inst, {r.best_config.bits().begin(),
                                                       r.best_config.bits().end()})) < 1e-9);
  CHECK(r.m_value == -r.best_energy / n);
  CHECK(r.alpha_value == static_cast<double>(r.best_config.cardinality()) / n);
}

// Best of 20 restarts; restart r uses the r-th point of the (beta, q) grid.
double best_of_restarts(const Instance& inst, bool pca, std::uint64_t seed) {
  double best = INFINITY;
  for (std::size_t r = 0; r < 20; ++r) {
    SolverParams p;
    p.beta = kBetas[r % kBetas.size()];
    p.q = kQs[r % kQs.size()];
    p.sweeps = 1000;
    p.seed = derive_seed(seed, r);
    const SolveResult res = pca ? pca_solve(inst, p) : metropolis_solve(inst, p);
    check_result_invariants(inst, res);
    best = std::min(best, res.best_energy);
  }
  return best;
}

}  // namespace

TEST_CASE("pca_conditional_p1 examples") {
  CHECK(pca_conditional_p1(3.7, 0, 0.0, 0.0) == 0.5);
  CHECK(pca_conditional_p1(-1.2, 1, 0.0, 0.0) == 0.5);
  CHECK(pca_conditional_p1(0.0, 1, 1.0, 20.0) ==
        doctest::Approx(1.0 / (1.0 + std::exp(-20.0))).epsilon(1e-15));
  CHECK(1.0 - pca_conditional_p1(0.0, 1, 1.0, 20.0) == doctest::Approx(2.0611536e-9).epsilon(1e-6));
  CHECK(pca_conditional_p1(1.0, 0, 1.0, 0.0) == doctest::Approx(0.2689414213699951).epsilon(1e-14));
  CHECK_THROWS_AS(pca_conditional_p1(NAN, 0, 1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(pca_conditional_p1(INFINITY, 0, 1.0, 1.0), std::invalid_argument);
}

TEST_CASE("pca_conditional_p1 matches the normalized pair-Hamiltonian weights") {
  for (double h : {-3.0, -0.4, 0.0, 0.9, 2.5}) {
    for (int eta : {0, 1}) {
      for (double beta : {0.3, 1.5}) {
        for (double q : {0.5, 2.5}) {
          const double w1 = std::exp(-beta * h - q * (1 - eta));
          const double w0 = std::exp(-q * eta);
          CHECK(pca_conditional_p1(h, eta, beta, q) ==
                doctest::Approx(w1 / (w0 + w1)).epsilon(1e-13));
        }
      }
    }
  }
}

TEST_CASE("metropolis_acceptance examples") {
  CHECK(metropolis_acceptance(-0.5, 2.0) == 1.0);
  CHECK(metropolis_acceptance(0.0, 2.0) == 1.0);
  CHECK(metropolis_acceptance(0.5, 2.0) == doctest::Approx(0.36787944117144233).epsilon(1e-15));
}

TEST_CASE("SolverParams validation") {
  SolverParams p;
  CHECK_NOTHROW(p.validate());
  p.beta = 0.0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p = {};
  p.q = -1.0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p = {};
  p.sweeps = 0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
}

TEST_CASE("pca_solve with huge inertia stays at the all-zero configuration") {
  const Instance inst = generate_instance(40, 3);
  SolverParams p;
  p.q = 50.0;
  p.sweeps = 200;
  p.seed = 1;
  const SolveResult r = pca_solve(inst, p);
  CHECK(r.best_energy <= 0.0);
  CHECK(r.best_config.cardinality() == 0);
  CHECK(r.sweeps_run == 200);
  CHECK(r.attempted_flips == 200 * 40);
}

TEST_CASE("pca_solve rejects asymmetric instances") {
  CHECK_THROWS_AS(pca_solve(generate_raw_instance(5, 1), SolverParams{}), precondition_error);
}

TEST_CASE("chains are deterministic given (instance, params)") {
  const Instance inst = generate_instance(30, 9);
  SolverParams p;
  p.sweeps = 300;
  p.seed = 12345;
  p.initial = InitialState::random;
  const SolveResult a = pca_solve(inst, p);
  const SolveResult b = pca_solve(inst, p);
  CHECK(a.best_config == b.best_config);
  CHECK(a.best_energy == b.best_energy);
  const SolveResult c = metropolis_solve(inst, p);
  const SolveResult d = metropolis_solve(inst, p);
  CHECK(c.best_config == d.best_config);
  CHECK(c.best_energy == d.best_energy);
}

TEST_CASE("best-so-far is non-increasing in sweeps") {
  const Instance inst = generate_instance(60, 21);
  SolverParams p;
  p.sweeps = 500;
  p.seed = 4;
  p.beta = 0.7;
  p.record_trace = true;
  for (const SolveResult& r : {pca_solve(inst, p), metropolis_solve(inst, p)}) {
    REQUIRE(r.best_trace.size() == 500);
    CHECK(std::is_sorted(r.best_trace.rbegin(), r.best_trace.rend()));
    CHECK(r.best_trace.front() <= 0.0);
    CHECK(std::abs(r.best_trace.back() - r.best_energy) < 1e-9);
  }
}

TEST_CASE("metropolis budget is sweeps * n attempts") {
  const Instance inst = generate_instance(25, 2);
  SolverParams p;
  p.sweeps = 40;
  const SolveResult r = metropolis_solve(inst, p);
  CHECK(r.attempted_flips == 40 * 25);
  check_result_invariants(inst, r);
}

TEST_CASE("greedy examples") {
  SUBCASE("all-positive couplings: no improving first step") {
    const Instance inst = Instance::from_matrix(3, {1, 2, 3, 2, 1, 4, 3, 4, 5});
    const SolveResult r = greedy_solve(inst);
    CHECK(r.best_config.cardinality() == 0);
    CHECK(r.best_energy == 0.0);
  }
  SUBCASE("two-site tie goes to index 0 and the zero step is not taken") {
    const Instance inst = Instance::from_matrix(2, {-1.0, 0.5, 0.5, -1.0});
    const SolveResult r = greedy_solve(inst);
    CHECK(r.best_config.to_string() == "10");
    CHECK(r.best_energy == doctest::Approx(-1.0 / std::sqrt(2.0)).epsilon(1e-14));
  }
}

TEST_CASE("greedy steps are the best strict improvement among zero sites") {
  // Replays greedy with fresh evaluations of every candidate.
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Instance inst = generate_instance(15, seed);
    std::vector<int> eta(15, 0);
    for (;;) {
      const double here = oracle::energy(inst, eta);
      int pick = -1;
      double pick_delta = 0.0;
      for (int i = 0; i < 15; ++i) {
        if (eta[i]) continue;
        eta[i] = 1;
        const double d = oracle::energy(inst, eta) - here;
        eta[i] = 0;
        if (d < pick_delta - 1e-12) {
          pick_delta = d;
          pick = i;
        }
      }
      if (pick < 0) break;
      eta[pick] = 1;
    }
    const SolveResult r = greedy_solve(inst);
    CHECK(std::vector<int>(r.best_config.bits().begin(), r.best_config.bits().end()) == eta);
    check_result_invariants(inst, r);
  }
}

TEST_CASE("exact_solve examples") {
  {
    const SolveResult r = exact_solve(Instance::from_matrix(1, {-2.0}));
    CHECK(r.best_config.to_string() == "1");
    CHECK(r.best_energy == -2.0);
    CHECK(r.m_value == 2.0);
  }
  {
    const SolveResult r = exact_solve(Instance::from_matrix(1, {0.7}));
    CHECK(r.best_config.to_string() == "0");
    CHECK(r.best_energy == 0.0);
  }
  CHECK_THROWS_AS(exact_solve(generate_instance(27, 1)), size_error);
}

TEST_CASE("exact_solve agrees with counting-order brute force") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Instance inst = generate_instance(1 + seed % 12, seed);
    const oracle::Minimum m = oracle::brute_force_minimum(inst);
    const SolveResult r = exact_solve(inst);
    CHECK(r.best_config == Configuration::from_code(inst.size(), m.code));
    CHECK(std::abs(r.best_energy - m.energy) < 1e-12);
    check_result_invariants(inst, r);
  }
}

TEST_CASE("exact_solve breaks ties by smallest code") {
  // J = 0 makes every configuration a minimizer.
  const SolveResult r = exact_solve(Instance::from_matrix(3, std::vector<double>(9, 0.0)));
  CHECK(r.best_config.cardinality() == 0);
  // Energies 0, -1/sqrt2, -1/sqrt2, -1/sqrt2 for codes 0..3; code 1 wins.
  const SolveResult s = exact_solve(Instance::from_matrix(2, {-1.0, 0.5, 0.5, -1.0}));
  CHECK(s.best_config.to_string() == "10");
}

TEST_CASE("dominance chain: exact <= every heuristic, all <= 0") {
  for (std::uint64_t seed = 0; seed < 15; ++seed) {
    const std::size_t n = 6 + seed % 15;
    const Instance inst = generate_instance(n, 1000 + seed);
    const double e = exact_solve(inst).best_energy;
    SolverParams p;
    p.sweeps = 300;
    p.seed = seed;
    const double pca = pca_solve(inst, p).best_energy;
    const double met = metropolis_solve(inst, p).best_energy;
    const double gr = greedy_solve(inst).best_energy;
    CHECK(e <= pca + 1e-12);
    CHECK(e <= met + 1e-12);
    CHECK(e <= gr + 1e-12);
    CHECK(pca <= 0.0);
    CHECK(met <= 0.0);
    CHECK(gr <= 0.0);
  }
}

TEST_CASE("heuristics match the exact ground state on >= 90% of small instances") {
  int pca_hits = 0, met_hits = 0;
  const int count = 20;
  for (int k = 0; k < count; ++k) {
    const std::size_t n = 8 + k % 13;
    const Instance inst = generate_instance(n, 500 + k);
    const double e = exact_solve(inst).best_energy;
    pca_hits += std::abs(best_of_restarts(inst, true, k) - e) < 1e-9;
    met_hits += std::abs(best_of_restarts(inst, false, k) - e) < 1e-9;
  }
  CHECK(pca_hits >= 18);
  CHECK(met_hits >= 18);
}

TEST_CASE("count_below examples") {
  const Instance inst = Instance::from_matrix(2, {-1.0, 0.5, 0.5, -1.0});
  const BelowCount c = count_below(inst, 0.3);
  CHECK(c.total == 3);
  CHECK(c.by_cardinality == std::vector<std::uint64_t>{0, 2, 1});
  CHECK(count_below(inst, 10.0).total == 0);
  CHECK(count_below(inst, -10.0).total == 4);
  CHECK_THROWS_AS(count_below(generate_instance(27, 0), 0.1), size_error);
}

TEST_CASE("count_below agrees with a brute-force count") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const std::size_t n = 4 + seed;
    const Instance inst = generate_instance(n, seed);
    for (double m : {0.0, 0.1, 0.25, 0.4}) {
      std::vector<std::uint64_t> expect(n + 1, 0);
      std::uint64_t total = 0;
      for (std::uint64_t code = 0; code < (std::uint64_t{1} << n); ++code) {
        const auto b = oracle::bits_of(n, code);
        if (oracle::energy(inst, b) < -m * n) {
          ++total;
          ++expect[std::count(b.begin(), b.end(), 1)];
        }
      }
      const BelowCount c = count_below(inst, m);
      CHECK(c.total == total);
      CHECK(c.by_cardinality == expect);
    }
  }
}
