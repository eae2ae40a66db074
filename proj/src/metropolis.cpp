#include <cmath>
#include <stdexcept>

#include "solver_detail.hpp"
#include "ubqp/rng.hpp"
#include "ubqp/solvers.hpp"

namespace ubqp {

double metropolis_acceptance(double delta, double beta) {
  if (std::isnan(delta)) throw std::invalid_argument("energy difference is NaN");
  return delta <= 0.0 ? 1.0 : std::exp(-beta * delta);
}

SolveResult metropolis_solve(const Instance& inst, const SolverParams& params) {
  params.validate();
  const std::size_t n = inst.size();
  const double beta = params.effective_beta(n);

  std::optional<Instance> storage;
  const Instance& work = detail::symmetric_form(inst, storage);

  Configuration cfg = detail::initial_configuration(n, params);
  FieldCache cache = local_fields(work, cfg);

  SolveResult result;
  result.best_config = cfg;
  double best = cache.energy;
  if (params.record_trace) result.best_trace.reserve(params.sweeps);

  SplitMix64 rng(derive_seed(params.seed, detail::kMetropolisDomain));
  std::uint64_t flips_since_rebuild = 0;

  for (std::size_t sweep = 0; sweep < params.sweeps; ++sweep) {
    for (std::size_t attempt = 0; attempt < n; ++attempt) {
      const auto i = static_cast<std::size_t>(rng.below(n));
      const double delta = detail::unchecked_delta(work, cfg, cache, i);
      if (delta > 0.0 && !(rng.uniform() < std::exp(-beta * delta))) {
        continue;
      }
      detail::shift_fields(work, cfg, cache, i);
      cfg.flip(i);
      cache.energy += delta;
      if (++flips_since_rebuild >= detail::kRebuildInterval) {
        cache = local_fields(work, cfg);
        flips_since_rebuild = 0;
      }
      if (cache.energy < best) {
        best = cache.energy;
        result.best_config = cfg;
      }
    }
    if (params.record_trace) result.best_trace.push_back(best);
  }

  result.sweeps_run = params.sweeps;
  result.attempted_flips = static_cast<std::uint64_t>(params.sweeps) * n;
  detail::finalize(inst, result);
  return result;
}

}  // namespace ubqp
