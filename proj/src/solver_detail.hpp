#pragma once

// Shared internals of the solver translation units.

#include <cstddef>
#include <cstdint>
#include <optional>

#include "ubqp/energy.hpp"
#include "ubqp/instance.hpp"
#include "ubqp/solvers.hpp"

namespace ubqp::detail {

// Rebuild incremental caches after this many accepted flips to bound drift.
inline constexpr std::uint64_t kRebuildInterval = 10000;

// Seed domains, so different consumers of one seed draw independent streams.
inline constexpr std::uint64_t kInitDomain = 0x1;
inline constexpr std::uint64_t kPcaDomain = 0x2;
inline constexpr std::uint64_t kMetropolisDomain = 0x3;

inline double unchecked_delta(const Instance& inst, const Configuration& cfg,
                              const FieldCache& cache, std::size_t i) {
  const double sign = cfg[i] ? -1.0 : 1.0;
  return sign * 2.0 * cache.h[i] + inst.coupling(i, i) * inst.scale();
}

// Field update for toggling bit i; does not touch cache.energy.
inline void shift_fields(const Instance& inst, const Configuration& cfg,
                         FieldCache& cache, std::size_t i) {
  const double step = (cfg[i] ? -1.0 : 1.0) * inst.scale();
  const double* row = inst.row(i).data();
  double* h = cache.h.data();
  const std::size_t n = inst.size();
  for (std::size_t k = 0; k < n; ++k) h[k] += step * row[k];
}

// The incremental updates read column i as row i. For asymmetric J they run
// on (J + J^T) / 2, which defines the same H. Returns inst itself when it is
// already symmetric; otherwise fills storage and returns it.
const Instance& symmetric_form(const Instance& inst,
                               std::optional<Instance>& storage);

Configuration initial_configuration(std::size_t n, const SolverParams& params);

// Fills the derived fields of a result from its best configuration, with
// best_energy recomputed directly from the Hamiltonian.
void finalize(const Instance& inst, SolveResult& result);

}  // namespace ubqp::detail
