#include "ubqp/measures.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <string>

#include "ubqp/errors.hpp"
#include "ubqp/solvers.hpp"

namespace ubqp {

namespace {

void check_size(const Instance& inst, std::size_t limit, const char* what) {
  if (inst.size() > limit) {
    throw size_error(std::string(what) + " refused for n=" +
                     std::to_string(inst.size()) + " (limit " +
                     std::to_string(limit) + ")");
  }
}

void check_symmetric(const Instance& inst, const char* what) {
  if (!inst.symmetric()) {
    throw precondition_error(std::string(what) +
                             " requires a symmetric coupling matrix");
  }
}

// Local fields of every configuration, indexed [code * n + i].
std::vector<double> all_fields(const Instance& inst) {
  const std::size_t n = inst.size();
  const std::uint64_t states = std::uint64_t{1} << n;
  std::vector<double> fields(states * n);
  for (std::uint64_t code = 0; code < states; ++code) {
    const auto cache = local_fields(inst, Configuration::from_code(n, code));
    std::copy(cache.h.begin(), cache.h.end(), fields.begin() + code * n);
  }
  return fields;
}

double pair_energy_from_fields(const double* h_eta, std::size_t n,
                               std::uint64_t eta, std::uint64_t tau,
                               double beta, double q) {
  double field_term = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if ((tau >> i) & 1u) field_term += h_eta[i];
  }
  return beta * field_term + q * static_cast<double>(std::popcount(eta ^ tau));
}

std::vector<double> normalized_from_log_weights(std::vector<double> neg_energy) {
  const double top = *std::max_element(neg_energy.begin(), neg_energy.end());
  double z = 0.0;
  for (double& w : neg_energy) {
    w = std::exp(w - top);
    z += w;
  }
  for (double& w : neg_energy) w /= z;
  return neg_energy;
}

}  // namespace

double pair_energy(const Instance& inst, const Configuration& eta,
                   const Configuration& tau, double beta, double q) {
  check_symmetric(inst, "pair_energy");
  if (tau.size() != inst.size()) {
    throw dimension_error("tau length does not match instance size");
  }
  const FieldCache cache = local_fields(inst, eta);
  double field_term = 0.0;
  double hamming = 0.0;
  for (std::size_t i = 0; i < inst.size(); ++i) {
    field_term += cache.h[i] * tau[i];
    hamming += eta[i] * (1 - tau[i]) + tau[i] * (1 - eta[i]);
  }
  return beta * field_term + q * hamming;
}

StationarityResidual pca_balance_residuals(const Instance& inst, double beta,
                                           double q) {
  check_size(inst, kMaxStationaritySize, "stationarity check");
  const std::size_t n = inst.size();
  const std::uint64_t states = std::uint64_t{1} << n;
  const std::vector<double> fields = all_fields(inst);
  auto pair = [&](std::uint64_t eta, std::uint64_t tau) {
    return pair_energy_from_fields(fields.data() + eta * n, n, eta, tau, beta, q);
  };

  double lowest = std::numeric_limits<double>::infinity();
  for (std::uint64_t eta = 0; eta < states; ++eta) {
    for (std::uint64_t tau = 0; tau < states; ++tau) {
      lowest = std::min(lowest, pair(eta, tau));
    }
  }
  auto weight = [&](std::uint64_t eta, std::uint64_t tau) {
    return std::exp(-(pair(eta, tau) - lowest));
  };

  // Row normalizers sum_tau exp(-H(eta, tau)) and the grand total.
  std::vector<double> row_sum(states, 0.0);
  double total = 0.0;
  for (std::uint64_t eta = 0; eta < states; ++eta) {
    for (std::uint64_t tau = 0; tau < states; ++tau) row_sum[eta] += weight(eta, tau);
    total += row_sum[eta];
  }

  std::vector<double> pi(states);
  for (std::uint64_t s = 0; s < states; ++s) pi[s] = row_sum[s] / total;

  StationarityResidual out;
  std::vector<double> pi_p(states, 0.0);
  for (std::uint64_t eta = 0; eta < states; ++eta) {
    for (std::uint64_t tau = 0; tau < states; ++tau) {
      const double p_forward = weight(eta, tau) / row_sum[eta];
      const double p_backward = weight(tau, eta) / row_sum[tau];
      pi_p[tau] += pi[eta] * p_forward;
      out.max_db_violation = std::max(
          out.max_db_violation, std::abs(pi[eta] * p_forward - pi[tau] * p_backward));
    }
  }
  for (std::uint64_t s = 0; s < states; ++s) {
    out.max_residual = std::max(out.max_residual, std::abs(pi_p[s] - pi[s]));
  }
  return out;
}

StationarityResidual verify_pca_stationarity(const Instance& inst, double beta,
                                             double q) {
  check_symmetric(inst, "verify_pca_stationarity");
  return pca_balance_residuals(inst, beta, q);
}

std::vector<double> pca_transition_matrix(const Instance& inst, double beta,
                                          double q) {
  check_size(inst, kMaxDenseMatrixSize, "dense transition matrix");
  const std::size_t n = inst.size();
  const std::uint64_t states = std::uint64_t{1} << n;
  std::vector<double> matrix(states * states);
  std::vector<double> p1(n);
  for (std::uint64_t eta = 0; eta < states; ++eta) {
    const Configuration cfg = Configuration::from_code(n, eta);
    const FieldCache cache = local_fields(inst, cfg);
    for (std::size_t i = 0; i < n; ++i) {
      p1[i] = pca_conditional_p1(cache.h[i], cfg[i], beta, q);
    }
    for (std::uint64_t tau = 0; tau < states; ++tau) {
      double p = 1.0;
      for (std::size_t i = 0; i < n; ++i) {
        p *= ((tau >> i) & 1u) ? p1[i] : 1.0 - p1[i];
      }
      matrix[eta * states + tau] = p;
    }
  }
  return matrix;
}

std::vector<double> pca_equilibrium_measure(const Instance& inst, double beta,
                                            double q) {
  check_size(inst, kMaxStationaritySize, "equilibrium measure");
  const std::size_t n = inst.size();
  const std::uint64_t states = std::uint64_t{1} << n;
  const std::vector<double> fields = all_fields(inst);
  // log sum_tau exp(-H(eta, tau)) per eta, via a per-row log-sum-exp.
  std::vector<double> log_weight(states);
  std::vector<double> terms(states);
  for (std::uint64_t eta = 0; eta < states; ++eta) {
    for (std::uint64_t tau = 0; tau < states; ++tau) {
      terms[tau] = -pair_energy_from_fields(fields.data() + eta * n, n, eta,
                                            tau, beta, q);
    }
    const double top = *std::max_element(terms.begin(), terms.end());
    double s = 0.0;
    for (double t : terms) s += std::exp(t - top);
    log_weight[eta] = top + std::log(s);
  }
  return normalized_from_log_weights(std::move(log_weight));
}

std::vector<double> gibbs_measure(const Instance& inst, double beta) {
  check_size(inst, kMaxStationaritySize, "Gibbs measure");
  const std::size_t n = inst.size();
  const std::uint64_t states = std::uint64_t{1} << n;
  std::vector<double> log_weight(states);
  for (std::uint64_t code = 0; code < states; ++code) {
    log_weight[code] = -beta * energy(inst, Configuration::from_code(n, code));
  }
  return normalized_from_log_weights(std::move(log_weight));
}

double total_variation(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) throw dimension_error("measures differ in length");
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += std::abs(a[k] - b[k]);
  return 0.5 * s;
}

std::vector<double> metropolis_transition_matrix(const Instance& inst,
                                                 double beta) {
  check_size(inst, kMaxDenseMatrixSize, "dense transition matrix");
  const std::size_t n = inst.size();
  const std::uint64_t states = std::uint64_t{1} << n;
  std::vector<double> energies(states);
  for (std::uint64_t code = 0; code < states; ++code) {
    energies[code] = energy(inst, Configuration::from_code(n, code));
  }
  std::vector<double> matrix(states * states, 0.0);
  const double pick = 1.0 / static_cast<double>(n);
  for (std::uint64_t eta = 0; eta < states; ++eta) {
    double stay = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
      const std::uint64_t tau = eta ^ (std::uint64_t{1} << i);
      const double p =
          pick * metropolis_acceptance(energies[tau] - energies[eta], beta);
      matrix[eta * states + tau] = p;
      stay -= p;
    }
    matrix[eta * states + eta] = std::max(0.0, stay);
  }
  return matrix;
}

double metropolis_reversibility_violation(const Instance& inst, double beta) {
  const std::vector<double> matrix = metropolis_transition_matrix(inst, beta);
  const std::vector<double> pi = gibbs_measure(inst, beta);
  const std::uint64_t states = pi.size();
  double worst = 0.0;
  for (std::uint64_t eta = 0; eta < states; ++eta) {
    for (std::uint64_t tau = 0; tau < states; ++tau) {
      worst = std::max(worst, std::abs(pi[eta] * matrix[eta * states + tau] -
                                       pi[tau] * matrix[tau * states + eta]));
    }
  }
  return worst;
}

}  // namespace ubqp
