#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ubqp/energy.hpp"
#include "ubqp/solvers.hpp"

namespace ubqp {

enum class SolverKind { automatic, exact, pca, metropolis, greedy };

std::string_view to_string(SolverKind kind) noexcept;
// Throws std::invalid_argument for unknown names.
SolverKind parse_solver_kind(std::string_view name);

// Sizes up to this are solved by enumeration when the solver is automatic.
inline constexpr std::size_t kExactCutoff = 20;

SolverKind resolve_solver(SolverKind kind, std::size_t n) noexcept;

// Seed tree: master -> instance -> run.
std::uint64_t instance_seed(std::uint64_t master, std::size_t n, std::size_t index);
std::uint64_t run_seed(std::uint64_t instance_seed, std::size_t run);

// Runs one solver of the given kind; params.seed is used as given.
SolveResult run_solver(SolverKind kind, const Instance& inst,
                       const SolverParams& params);

struct StatsOptions {
  std::size_t n = 1;
  std::size_t instances = 2;
  std::size_t runs = 3;
  SolverParams params;  // seed is replaced per run from the seed tree
  SolverKind solver = SolverKind::automatic;
  std::uint64_t master_seed = 0;
  unsigned workers = 0;  // 0 = hardware concurrency
  bool keep_outcomes = false;
};

struct StatsRow {
  std::size_t n = 0;
  double m_mean = 0.0;
  double m_var = 0.0;  // unbiased, over kept instances
  double alpha_mean = 0.0;
  std::size_t instances_total = 0;
  std::size_t instances_kept = 0;
  std::size_t runs_per_instance = 0;
};

struct InstanceOutcome {
  std::uint64_t instance_seed = 0;
  bool consensus = false;
  Configuration minimizer;  // best configuration over the runs
  double m_value = 0.0;     // best m over the runs
  double alpha_value = 0.0;
  std::vector<double> run_m_values;
};

struct StatsReport {
  StatsRow row;
  std::vector<double> kept_m_values;  // instance order
  std::vector<double> all_m_values;   // best per instance, kept or not
  std::vector<InstanceOutcome> outcomes;  // only with keep_outcomes
};

class empty_consensus_error : public std::runtime_error {
 public:
  empty_consensus_error(std::size_t total, std::size_t runs);
};

StatsReport estimate_stats_detailed(const StatsOptions& options);
StatsRow estimate_stats(const StatsOptions& options);

struct CompareOptions {
  std::size_t n = 500;
  std::vector<std::string> instance_ids;  // empty: default_instance_ids(n, 5)
  std::vector<double> betas = {0.3, 0.7, 1.1, 1.5, 1.9, 2.3};
  std::vector<double> qs = {0.5, 1.0, 1.5, 2.0, 2.5};
  std::size_t restarts = 1;
  std::size_t sweeps = 10000;
  BetaUnits beta_units = BetaUnits::unnormalized;
  std::uint64_t master_seed = 0;
  unsigned workers = 0;
};

struct ComparisonRow {
  std::size_t n = 0;
  std::string instance_id;
  double m_pca = 0.0;
  double m_metropolis = 0.0;
  double m_greedy = 0.0;
};

struct ComparisonReport {
  std::vector<ComparisonRow> rows;
  double avg_pca = 0.0;
  double avg_metropolis = 0.0;
  double avg_greedy = 0.0;
};

// "500a", "500b", ...
std::vector<std::string> default_instance_ids(std::size_t n, std::size_t count);
std::uint64_t comparison_instance_seed(std::uint64_t master, std::string_view id);

// Best m per instance over the (beta, q) grid and restarts for PCA, over
// beta and restarts for Metropolis (sweeps * n attempts), and greedy.
ComparisonReport compare_solvers(const CompareOptions& options);

struct TrendRow {
  std::size_t n = 0;
  double m_mean = 0.0;
  double m_var = 0.0;
  double mean_abs_deviation = 0.0;  // mean |m_N - m_mean| over kept instances
  std::size_t instances_kept = 0;
  std::size_t instances_total = 0;
};

// Sizes must be strictly increasing and >= 2. Exact for n <= kExactCutoff,
// PCA above.
std::vector<TrendRow> concentration_trend(std::span<const std::size_t> sizes,
                                          std::size_t instances, std::size_t runs,
                                          const SolverParams& params,
                                          std::uint64_t master_seed,
                                          unsigned workers = 0);

void write_stats_csv(std::ostream& out, std::span<const StatsRow> rows);
void write_comparison_csv(std::ostream& out, const ComparisonReport& report);
void write_trend_csv(std::ostream& out, std::span<const TrendRow> rows);

}  // namespace ubqp
