#include "solver_detail.hpp"
#include "ubqp/solvers.hpp"

namespace ubqp {

SolveResult greedy_solve(const Instance& inst) {
  const std::size_t n = inst.size();
  std::optional<Instance> storage;
  const Instance& work = detail::symmetric_form(inst, storage);
  Configuration cfg(n);
  FieldCache cache = local_fields(work, cfg);

  for (;;) {
    // Most negative strict decrease among zero sites; ties go to lowest index.
    std::size_t pick = n;
    double pick_delta = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (cfg[i]) continue;
      const double d = detail::unchecked_delta(work, cfg, cache, i);
      if (d < pick_delta) {
        pick_delta = d;
        pick = i;
      }
    }
    if (pick == n) break;
    apply_flip(work, cfg, cache, pick);
  }

  SolveResult result;
  result.best_config = std::move(cfg);
  detail::finalize(inst, result);
  return result;
}

}  // namespace ubqp
