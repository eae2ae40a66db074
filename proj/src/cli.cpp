#include "ubqp/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <limits>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>

#include "ubqp/bounds.hpp"
#include "ubqp/errors.hpp"
#include "ubqp/format.hpp"
#include "ubqp/instance.hpp"
#include "ubqp/measures.hpp"

namespace ubqp::cli {

namespace {

// Writes to --output when given, otherwise to out.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) {
    if (path.empty()) {
      stream_ = &fallback;
      return;
    }
    file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
    if (!*file_) throw std::runtime_error("cannot open '" + path + "' for writing");
    stream_ = file_.get();
  }
  std::ostream& get() { return *stream_; }
  void close() {
    stream_->flush();
    if (!*stream_) throw std::runtime_error("failed writing output");
  }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_ = nullptr;
};

Instance instance_from(const RunConfig& cfg) {
  if (!cfg.input_path.empty()) return load_instance(cfg.input_path);
  if (cfg.n == 0) throw std::invalid_argument("give --input FILE or --n N (N >= 1)");
  return generate_instance(cfg.n, cfg.seed);
}

SolverParams params_from(const RunConfig& cfg) {
  SolverParams p;
  p.beta = cfg.beta;
  p.q = cfg.q;
  p.sweeps = cfg.sweeps;
  p.seed = cfg.seed;
  p.initial = cfg.initial;
  p.beta_units = cfg.beta_units;
  p.validate();
  return p;
}

void print_result(std::ostream& out, std::string_view solver, const Instance& inst,
                  const SolveResult& r, bool with_config) {
  out << "solver=" << solver << " n=" << inst.size()
      << " energy=" << format_double(r.best_energy)
      << " m=" << format_double(r.m_value)
      << " alpha=" << format_double(r.alpha_value)
      << " sweeps=" << r.sweeps_run << " attempted_flips=" << r.attempted_flips
      << '\n';
  if (with_config) out << "config=" << r.best_config.to_string() << '\n';
}

int cmd_gen(const RunConfig& cfg, std::ostream& out) {
  if (cfg.n == 0) throw std::invalid_argument("--n must be at least 1");
  Sink sink(cfg.output_path, out);
  write_instance(sink.get(), generate_instance(cfg.n, cfg.seed));
  sink.close();
  return 0;
}

int cmd_solve(const RunConfig& cfg, std::ostream& out) {
  const Instance inst = instance_from(cfg);
  const SolverKind kind = resolve_solver(cfg.solver, inst.size());
  const SolverParams params = params_from(cfg);
  const SolveResult r = run_solver(kind, inst, params);
  print_result(out, to_string(kind), inst, r, cfg.print_config);
  return 0;
}

int cmd_exact(const RunConfig& cfg, std::ostream& out) {
  const Instance inst = instance_from(cfg);
  const SolveResult r = exact_solve(inst);
  print_result(out, "exact", inst, r, cfg.print_config);
  if (cfg.count_m) {
    const BelowCount c = count_below(inst, *cfg.count_m);
    out << "count_below m=" << format_double(*cfg.count_m) << " total=" << c.total << '\n';
    out << "cardinality,alpha,count\n";
    for (std::size_t k = 0; k < c.by_cardinality.size(); ++k) {
      out << k << ',' << format_double(static_cast<double>(k) / inst.size()) << ','
          << c.by_cardinality[k] << '\n';
    }
  }
  return 0;
}

int cmd_bounds(const RunConfig& cfg, std::ostream& out) {
  for (auto rate : {RateFunction::annealed, RateFunction::conditional}) {
    const BoundResult b = critical_m(rate);
    char line[160];
    std::snprintf(line, sizeof(line), "%s m_star=%.6f alpha_star=%.6f tolerance=%.1e\n",
                  std::string(to_string(rate)).c_str(), b.m_star, b.alpha_star,
                  b.tolerance);
    out << line;
  }
  if (cfg.table_m) {
    Sink sink(cfg.output_path, out);
    sink.get() << "alpha,F,F1\n";
    for (const auto& row : rate_table(*cfg.table_m)) {
      sink.get() << format_double(row.alpha) << ',' << format_double(row.annealed)
                 << ',' << format_double(row.conditional) << '\n';
    }
    sink.close();
  }
  return 0;
}

int cmd_stats(const RunConfig& cfg, std::ostream& out) {
  std::vector<std::size_t> sizes = cfg.sizes;
  if (sizes.empty()) {
    if (cfg.n == 0) throw std::invalid_argument("give --n N or --sizes N1,N2,...");
    sizes.push_back(cfg.n);
  }
  std::vector<StatsRow> rows;
  for (std::size_t n : sizes) {
    StatsOptions opts;
    opts.n = n;
    opts.instances = cfg.instances;
    opts.runs = cfg.runs;
    opts.params = params_from(cfg);
    opts.solver = cfg.solver;
    opts.master_seed = cfg.seed;
    opts.workers = cfg.workers;
    rows.push_back(estimate_stats(opts));
  }
  Sink sink(cfg.output_path, out);
  write_stats_csv(sink.get(), rows);
  sink.close();
  return 0;
}

int cmd_compare(const RunConfig& cfg, std::ostream& out) {
  if (cfg.n == 0) throw std::invalid_argument("--n must be at least 1");
  CompareOptions opts;
  opts.n = cfg.n;
  opts.instance_ids = default_instance_ids(cfg.n, cfg.instances);
  opts.restarts = cfg.runs;
  opts.sweeps = cfg.sweeps;
  opts.beta_units = cfg.beta_units;
  opts.master_seed = cfg.seed;
  opts.workers = cfg.workers;
  const ComparisonReport report = compare_solvers(opts);
  Sink sink(cfg.output_path, out);
  write_comparison_csv(sink.get(), report);
  sink.close();
  return 0;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  const std::size_t n = cfg.n == 0 ? 3 : cfg.n;
  if (n > kMaxDenseMatrixSize) {
    throw size_error("verify supports n <= " + std::to_string(kMaxDenseMatrixSize));
  }
  const Instance inst = generate_instance(n, cfg.seed);
  const StationarityResidual pca = verify_pca_stationarity(inst, cfg.beta, cfg.q);
  const double metro = metropolis_reversibility_violation(inst, cfg.beta);
  char line[200];
  std::snprintf(line, sizeof(line),
                "n=%zu beta=%g q=%g pca_max_residual=%.3e pca_max_db_violation=%.3e "
                "metropolis_max_db_violation=%.3e\n",
                n, cfg.beta, cfg.q, pca.max_residual, pca.max_db_violation, metro);
  out << line;
  constexpr double kLimit = 1e-12;
  const bool ok = pca.max_residual < kLimit && pca.max_db_violation < kLimit &&
                  metro < kLimit;
  out << (ok ? "verify: ok\n" : "verify: FAILED\n");
  return ok ? 0 : 1;
}

}  // namespace

int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Ground states of Gaussian UBQP instances (lattice-gas SK model)", "ubqp"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::string solver_name;
  std::string initial_name = "all_zero";
  std::string units_name = "unnormalized";

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--seed", cfg.seed, "Instance / master seed");
    sub->add_option("--output,-o", cfg.output_path, "Output file (default stdout)");
  };
  auto add_instance = [&](CLI::App* sub) {
    sub->add_option("--n", cfg.n, "Problem size")->check(CLI::PositiveNumber);
    sub->add_option("--input,-i", cfg.input_path, "Instance file")->check(CLI::ExistingFile);
  };
  auto add_chain = [&](CLI::App* sub) {
    sub->add_option("--beta", cfg.beta, "Inverse temperature")->check(CLI::PositiveNumber);
    sub->add_option("--q", cfg.q, "Inertia of the PCA")->check(CLI::PositiveNumber);
    sub->add_option("--sweeps", cfg.sweeps, "PCA iterations (Metropolis: sweeps*n attempts)")
        ->check(CLI::PositiveNumber);
    sub->add_option("--initial", initial_name, "Initial configuration")
        ->check(CLI::IsMember({"all_zero", "random"}));
    sub->add_option("--beta-units", units_name,
                    "unnormalized: beta scales sum_ij J_ij eta_i eta_j; normalized: beta scales H")
        ->check(CLI::IsMember({"unnormalized", "normalized"}));
  };
  auto add_solver = [&](CLI::App* sub) {
    sub->add_option("--solver", solver_name, "Solver")
        ->check(CLI::IsMember({"auto", "pca", "metropolis", "greedy", "exact"}));
  };

  std::map<CLI::App*, Command> commands;
  auto* gen = app.add_subcommand("gen", "Generate an instance file");
  gen->add_option("--n", cfg.n, "Problem size")->required()->check(CLI::PositiveNumber);
  add_common(gen);
  commands[gen] = Command::gen;

  auto* solve = app.add_subcommand("solve", "Run one solver on an instance");
  add_common(solve);
  add_instance(solve);
  add_chain(solve);
  add_solver(solve);
  solve->add_flag("--print-config", cfg.print_config, "Print the best bit vector");
  commands[solve] = Command::solve;

  auto* exact = app.add_subcommand("exact", "Exhaustive ground state and level counts");
  add_common(exact);
  add_instance(exact);
  exact->add_option("--m", cfg.count_m, "Also count configurations with H < -m n");
  exact->add_flag("--print-config", cfg.print_config, "Print the minimizer");
  commands[exact] = Command::exact;

  auto* bounds = app.add_subcommand("bounds", "Critical m of the annealed and conditioned bounds");
  bounds->add_option("--table-m", cfg.table_m, "Emit the (alpha, F, F1) table at this m");
  bounds->add_option("--output,-o", cfg.output_path, "Table output file (default stdout)");
  commands[bounds] = Command::bounds;

  auto* stats = app.add_subcommand("stats", "Per-size statistics of m_N and alpha_N");
  add_common(stats);
  stats->add_option("--n", cfg.n, "Problem size")->check(CLI::PositiveNumber);
  stats->add_option("--sizes", cfg.sizes, "Several sizes, one row each")->delimiter(',');
  stats->add_option("--instances", cfg.instances, "Instances per size")
      ->check(CLI::Range(std::size_t{2}, std::numeric_limits<std::size_t>::max()));
  stats->add_option("--runs", cfg.runs, "Independent runs per instance")
      ->check(CLI::PositiveNumber);
  stats->add_option("--workers", cfg.workers, "Worker threads (0 = all cores)");
  add_chain(stats);
  add_solver(stats);
  commands[stats] = Command::stats;

  auto* compare = app.add_subcommand("compare", "PCA / Metropolis / greedy on a grid of (beta, q)");
  add_common(compare);
  compare->add_option("--n", cfg.n, "Problem size")->required()->check(CLI::PositiveNumber);
  compare->add_option("--instances", cfg.instances, "Number of instances")
      ->check(CLI::PositiveNumber);
  compare->add_option("--runs", cfg.runs, "Restarts per grid point")->check(CLI::PositiveNumber);
  compare->add_option("--sweeps", cfg.sweeps, "PCA iterations per run")
      ->check(CLI::PositiveNumber);
  compare->add_option("--beta-units", units_name, "See solve --help")
      ->check(CLI::IsMember({"unnormalized", "normalized"}));
  compare->add_option("--workers", cfg.workers, "Worker threads (0 = all cores)");
  commands[compare] = Command::compare;

  auto* verify = app.add_subcommand("verify", "Exact balance checks on a small instance");
  verify->add_option("--n", cfg.n, "Problem size (<= 10, default 3)")->check(CLI::PositiveNumber);
  verify->add_option("--seed", cfg.seed, "Instance seed");
  verify->add_option("--beta", cfg.beta, "Inverse temperature")->check(CLI::PositiveNumber);
  verify->add_option("--q", cfg.q, "Inertia")->check(CLI::PositiveNumber);
  commands[verify] = Command::verify;

  std::vector<std::string> args(argv.size() > 0 ? argv.begin() + 1 : argv.end(), argv.end());
  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  for (const auto& [sub, command] : commands) {
    if (sub->parsed()) cfg.command = command;
  }
  if (solver_name.empty()) solver_name = cfg.command == Command::stats ? "auto" : "pca";

  try {
    cfg.solver = parse_solver_kind(solver_name);
    cfg.beta_units =
        units_name == "normalized" ? BetaUnits::normalized : BetaUnits::unnormalized;
    cfg.initial = initial_name == "random" ? InitialState::random : InitialState::all_zero;
    switch (cfg.command) {
      case Command::gen: return cmd_gen(cfg, out);
      case Command::solve: return cmd_solve(cfg, out);
      case Command::exact: return cmd_exact(cfg, out);
      case Command::bounds: return cmd_bounds(cfg, out);
      case Command::stats: return cmd_stats(cfg, out);
      case Command::compare: return cmd_compare(cfg, out);
      case Command::verify: return cmd_verify(cfg, out);
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}

}  // namespace ubqp::cli
