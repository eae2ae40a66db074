#pragma once

// Exact small-n checks of the Markov chains: explicit transition matrices,
// equilibrium measures and balance residuals.

#include <cstddef>
#include <vector>

#include "ubqp/energy.hpp"
#include "ubqp/instance.hpp"

namespace ubqp {

inline constexpr std::size_t kMaxStationaritySize = 12;
inline constexpr std::size_t kMaxDenseMatrixSize = 10;

// H(eta, tau) = beta sum_i h_i(eta) tau_i + q sum_i [eta_i (1 - tau_i) + tau_i (1 - eta_i)].
// Requires a symmetric instance.
double pair_energy(const Instance& inst, const Configuration& eta,
                   const Configuration& tau, double beta, double q);

struct StationarityResidual {
  double max_residual = 0.0;      // max_tau |(pi P)(tau) - pi(tau)|
  double max_db_violation = 0.0;  // max |pi(eta) P(eta,tau) - pi(tau) P(tau,eta)|
};

// Exact check over all 4^n pairs, built from the pair Hamiltonian.
// Requires symmetric J and n <= kMaxStationaritySize.
StationarityResidual verify_pca_stationarity(const Instance& inst, double beta,
                                             double q);

// The same computation without the symmetry precondition; used to show the
// balance identity breaks for asymmetric J.
StationarityResidual pca_balance_residuals(const Instance& inst, double beta,
                                           double q);

// Dense 2^n x 2^n PCA transition matrix, row-major, built from the
// product of per-site conditionals. Row/column index = configuration code.
std::vector<double> pca_transition_matrix(const Instance& inst, double beta,
                                          double q);

// pi(eta) proportional to sum_tau exp(-H(eta, tau)).
std::vector<double> pca_equilibrium_measure(const Instance& inst, double beta,
                                            double q);

// pi_G(eta) proportional to exp(-beta H(eta)).
std::vector<double> gibbs_measure(const Instance& inst, double beta);

double total_variation(const std::vector<double>& a, const std::vector<double>& b);

// Dense single-flip Metropolis matrix: P(eta, eta^i) = exp(-beta [dH]_+) / n.
std::vector<double> metropolis_transition_matrix(const Instance& inst,
                                                 double beta);

// max over pairs of |pi_G(eta) P(eta,tau) - pi_G(tau) P(tau,eta)|.
double metropolis_reversibility_violation(const Instance& inst, double beta);

}  // namespace ubqp
