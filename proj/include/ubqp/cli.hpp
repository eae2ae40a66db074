#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ubqp/experiments.hpp"

namespace ubqp::cli {

enum class Command { gen, solve, exact, bounds, stats, compare, verify };

struct RunConfig {
  Command command = Command::solve;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  SolverKind solver = SolverKind::pca;
  double beta = 1.5;
  double q = 1.0;
  std::size_t sweeps = 10000;
  std::size_t runs = 3;
  std::size_t instances = 100;
  std::string input_path;
  std::string output_path;
  unsigned workers = 0;
  InitialState initial = InitialState::all_zero;
  BetaUnits beta_units = BetaUnits::unnormalized;
  bool print_config = false;
  std::vector<std::size_t> sizes;           // stats: one row per size
  std::optional<double> count_m;            // exact: also count H < -m n
  std::optional<double> table_m;            // bounds: emit (alpha, F, F1) table
};

// Parses argv (argv[0] is the program name) and dispatches. Data goes to
// out, diagnostics to err. Returns the process exit status.
int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err);

}  // namespace ubqp::cli
