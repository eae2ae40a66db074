#include <bit>
#include <cmath>
#include <string>

#include "solver_detail.hpp"
#include "ubqp/errors.hpp"
#include "ubqp/solvers.hpp"

namespace ubqp {

namespace {

constexpr double kTieTolerance = 1e-12;

void check_enumeration_size(const Instance& inst) {
  if (inst.size() > kMaxEnumerationSize) {
    throw size_error("exhaustive enumeration refused for n=" +
                     std::to_string(inst.size()) + " (limit " +
                     std::to_string(kMaxEnumerationSize) + ")");
  }
}

// Visits all 2^n configurations in Gray-code order. visit(code, cfg, energy)
// receives the incrementally maintained energy.
template <typename Visit>
void enumerate_configurations(const Instance& inst, Visit&& visit) {
  const std::size_t n = inst.size();
  std::optional<Instance> storage;
  const Instance& work = detail::symmetric_form(inst, storage);

  Configuration cfg(n);
  FieldCache cache = local_fields(work, cfg);
  std::uint64_t code = 0;
  visit(code, cfg, cache.energy);

  constexpr std::uint64_t kRebuildMask = (1u << 12) - 1;
  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t step = 1; step < total; ++step) {
    const auto i = static_cast<std::size_t>(std::countr_zero(step));
    const double delta = detail::unchecked_delta(work, cfg, cache, i);
    detail::shift_fields(work, cfg, cache, i);
    cfg.flip(i);
    cache.energy += delta;
    code ^= std::uint64_t{1} << i;
    if ((step & kRebuildMask) == 0) cache = local_fields(work, cfg);
    visit(code, cfg, cache.energy);
  }
}

}  // namespace

SolveResult exact_solve(const Instance& inst) {
  check_enumeration_size(inst);
  double best = 0.0;
  std::uint64_t best_code = 0;
  enumerate_configurations(
      inst, [&](std::uint64_t code, const Configuration&, double e) {
        // Equal energies can differ in the last bits after incremental
        // updates; treat those as ties.
        const double slack = kTieTolerance * (1.0 + std::abs(best));
        if (e < best - slack || (e <= best + slack && code < best_code)) {
          best = e;
          best_code = code;
        }
      });

  SolveResult result;
  result.best_config = Configuration::from_code(inst.size(), best_code);
  result.sweeps_run = 0;
  result.attempted_flips = (std::uint64_t{1} << inst.size()) - 1;
  detail::finalize(inst, result);
  return result;
}

BelowCount count_below(const Instance& inst, double m) {
  check_enumeration_size(inst);
  const double threshold = -m * static_cast<double>(inst.size());
  BelowCount out;
  out.by_cardinality.assign(inst.size() + 1, 0);
  enumerate_configurations(
      inst, [&](std::uint64_t, const Configuration& cfg, double e) {
        if (e < threshold) {
          ++out.total;
          ++out.by_cardinality[cfg.cardinality()];
        }
      });
  return out;
}

}  // namespace ubqp
