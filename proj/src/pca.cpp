#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "solver_detail.hpp"
#include "ubqp/errors.hpp"
#include "ubqp/rng.hpp"
#include "ubqp/solvers.hpp"

namespace ubqp {

void SolverParams::validate() const {
  if (!(beta > 0.0) || !std::isfinite(beta)) {
    throw std::invalid_argument("beta must be a positive finite number");
  }
  if (!(q > 0.0) || !std::isfinite(q)) {
    throw std::invalid_argument("q must be a positive finite number");
  }
  if (sweeps < 1) throw std::invalid_argument("sweeps must be at least 1");
}

double SolverParams::effective_beta(std::size_t n) const noexcept {
  return beta_units == BetaUnits::unnormalized
             ? beta * std::sqrt(static_cast<double>(n))
             : beta;
}

namespace detail {

const Instance& symmetric_form(const Instance& inst,
                               std::optional<Instance>& storage) {
  if (inst.symmetric()) return inst;
  const std::size_t n = inst.size();
  std::vector<double> j(n * n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      j[a * n + b] = (inst.coupling(a, b) + inst.coupling(b, a)) / 2.0;
    }
  }
  storage.emplace(n, std::move(j), inst.seed(), true);
  return *storage;
}

Configuration initial_configuration(std::size_t n, const SolverParams& params) {
  Configuration cfg(n);
  if (params.initial == InitialState::random) {
    SplitMix64 rng(derive_seed(params.seed, kInitDomain));
    for (std::size_t i = 0; i < n; ++i) {
      if (rng.next() >> 63) cfg.flip(i);
    }
  }
  return cfg;
}

void finalize(const Instance& inst, SolveResult& result) {
  const double n = static_cast<double>(inst.size());
  result.best_energy = energy(inst, result.best_config);
  result.m_value = -result.best_energy / n;
  result.alpha_value = static_cast<double>(result.best_config.cardinality()) / n;
}

}  // namespace detail

double pca_conditional_p1(double h_i, int eta_i, double beta, double q) {
  if (!std::isfinite(h_i)) throw std::invalid_argument("local field is not finite");
  if (!(beta >= 0.0) || !(q >= 0.0)) {
    throw std::invalid_argument("beta and q must be non-negative");
  }
  // weight(1) ~ exp(-beta h - q (1 - eta)), weight(0) ~ exp(-q eta)
  const double x = beta * h_i + q * (1.0 - 2.0 * eta_i);
  if (x > 0.0) {
    const double e = std::exp(-x);
    return e / (1.0 + e);
  }
  return 1.0 / (1.0 + std::exp(x));
}

SolveResult pca_solve(const Instance& inst, const SolverParams& params) {
  params.validate();
  if (!inst.symmetric()) {
    throw precondition_error("pca_solve requires a symmetric coupling matrix");
  }
  const std::size_t n = inst.size();
  const double beta = params.effective_beta(n);

  Configuration cfg = detail::initial_configuration(n, params);
  FieldCache cache = local_fields(inst, cfg);

  SolveResult result;
  result.best_config = cfg;
  double best = cache.energy;
  if (params.record_trace) result.best_trace.reserve(params.sweeps);

  std::vector<std::size_t> changed;
  changed.reserve(n);
  std::uint64_t flips_since_rebuild = 0;

  for (std::size_t sweep = 1; sweep <= params.sweeps; ++sweep) {
    // Every site reads the frozen eta; its uniform is the i-th element of a
    // per-sweep counter stream, so the loop could run in any order.
    const std::uint64_t key = derive_seed(params.seed, detail::kPcaDomain, sweep);
    changed.clear();
    for (std::size_t i = 0; i < n; ++i) {
      const double p1 = pca_conditional_p1(cache.h[i], cfg[i], beta, params.q);
      const double u = to_unit(mix64(key + i * 0x9e3779b97f4a7c15ULL));
      const int tau = u < p1 ? 1 : 0;
      if (tau != cfg[i]) changed.push_back(i);
    }

    for (std::size_t k : changed) {
      detail::shift_fields(inst, cfg, cache, k);
      cfg.flip(k);
    }
    flips_since_rebuild += changed.size();
    if (flips_since_rebuild >= detail::kRebuildInterval) {
      cache = local_fields(inst, cfg);
      flips_since_rebuild = 0;
    } else if (!changed.empty()) {
      double e = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        if (cfg[i]) e += cache.h[i];
      }
      cache.energy = e;
    }

    if (cache.energy < best) {
      best = cache.energy;
      result.best_config = cfg;
    }
    if (params.record_trace) result.best_trace.push_back(best);
  }

  result.sweeps_run = params.sweeps;
  result.attempted_flips = static_cast<std::uint64_t>(params.sweeps) * n;
  detail::finalize(inst, result);
  return result;
}

}  // namespace ubqp
