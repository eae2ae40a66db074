#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "ubqp/energy.hpp"
#include "ubqp/instance.hpp"

namespace ubqp {

enum class InitialState { all_zero, random };

// What the inverse temperature multiplies inside the chains.
//  normalized:   beta * H(eta), H carrying the 1/sqrt(n) factor.
//  unnormalized: beta * sqrt(n) * H(eta) = beta * sum_ij J_ij eta_i eta_j.
// The (beta, q) grids quoted for the reference experiments only reach
// near-ground-state energies in unnormalized units; in normalized units
// beta <= 2.3 sits above the glass transition of this model.
enum class BetaUnits { normalized, unnormalized };

struct SolverParams {
  double beta = 1.5;
  double q = 1.0;
  // PCA iterations; Metropolis gets sweeps * n single-flip attempts.
  std::size_t sweeps = 10000;
  std::uint64_t seed = 0;
  InitialState initial = InitialState::all_zero;
  BetaUnits beta_units = BetaUnits::unnormalized;
  // Record the best energy after every sweep into SolveResult::best_trace.
  bool record_trace = false;

  // Throws std::invalid_argument unless beta > 0, q > 0, sweeps >= 1.
  void validate() const;

  // Inverse temperature applied to H(eta) for a problem of size n.
  double effective_beta(std::size_t n) const noexcept;
};

struct SolveResult {
  Configuration best_config;
  double best_energy = 0.0;
  double m_value = 0.0;      // -best_energy / n
  double alpha_value = 0.0;  // |best_config| / n
  std::size_t sweeps_run = 0;
  std::uint64_t attempted_flips = 0;
  std::vector<double> best_trace;
};

// Largest n accepted by the exhaustive routines.
inline constexpr std::size_t kMaxEnumerationSize = 26;

// P(tau_i = 1 | eta) of the PCA, from the pair Hamiltonian:
// 1 / (1 + exp(beta h_i + q (1 - 2 eta_i))).
double pca_conditional_p1(double h_i, int eta_i, double beta, double q);

// Metropolis acceptance probability exp(-beta [delta]_+).
double metropolis_acceptance(double delta, double beta);

SolveResult pca_solve(const Instance& inst, const SolverParams& params);
SolveResult metropolis_solve(const Instance& inst, const SolverParams& params);
SolveResult greedy_solve(const Instance& inst);
SolveResult exact_solve(const Instance& inst);

struct BelowCount {
  std::uint64_t total = 0;
  // by_cardinality[k] = number of configurations with k ones and H < -m n.
  std::vector<std::uint64_t> by_cardinality;
};

BelowCount count_below(const Instance& inst, double m);

}  // namespace ubqp
