#include "ubqp/experiments.hpp"

#include <cmath>
#include <ostream>

#include "ubqp/format.hpp"
#include "ubqp/instance.hpp"
#include "ubqp/parallel.hpp"
#include "ubqp/rng.hpp"

namespace ubqp {

namespace {

constexpr std::uint64_t kRunDomain = 0x52554e;  // "RUN"
constexpr std::uint64_t kPcaTaskDomain = 0x504341;
constexpr std::uint64_t kMetropolisTaskDomain = 0x4d4554;

}  // namespace

std::string_view to_string(SolverKind kind) noexcept {
  switch (kind) {
    case SolverKind::automatic: return "auto";
    case SolverKind::exact: return "exact";
    case SolverKind::pca: return "pca";
    case SolverKind::metropolis: return "metropolis";
    case SolverKind::greedy: return "greedy";
  }
  return "unknown";
}

SolverKind parse_solver_kind(std::string_view name) {
  for (auto kind : {SolverKind::automatic, SolverKind::exact, SolverKind::pca,
                    SolverKind::metropolis, SolverKind::greedy}) {
    if (name == to_string(kind)) return kind;
  }
  throw std::invalid_argument("unknown solver '" + std::string(name) +
                              "' (expected auto, exact, pca, metropolis or greedy)");
}

SolverKind resolve_solver(SolverKind kind, std::size_t n) noexcept {
  if (kind != SolverKind::automatic) return kind;
  return n <= kExactCutoff ? SolverKind::exact : SolverKind::pca;
}

std::uint64_t instance_seed(std::uint64_t master, std::size_t n, std::size_t index) {
  return derive_seed(master, n, index);
}

std::uint64_t run_seed(std::uint64_t instance_seed, std::size_t run) {
  return derive_seed(instance_seed, kRunDomain, run);
}

SolveResult run_solver(SolverKind kind, const Instance& inst,
                       const SolverParams& params) {
  switch (resolve_solver(kind, inst.size())) {
    case SolverKind::exact: return exact_solve(inst);
    case SolverKind::pca: return pca_solve(inst, params);
    case SolverKind::metropolis: return metropolis_solve(inst, params);
    case SolverKind::greedy: return greedy_solve(inst);
    case SolverKind::automatic: break;
  }
  throw std::logic_error("unresolved solver kind");
}

empty_consensus_error::empty_consensus_error(std::size_t total, std::size_t runs)
    : std::runtime_error("no instance reached consensus: 0 of " +
                         std::to_string(total) + " instances had all " +
                         std::to_string(runs) + " runs agree on the minimizer") {}

StatsReport estimate_stats_detailed(const StatsOptions& options) {
  if (options.n < 1) throw std::invalid_argument("n must be at least 1");
  if (options.instances < 2) throw std::invalid_argument("instances must be at least 2");
  if (options.runs < 1) throw std::invalid_argument("runs must be at least 1");
  options.params.validate();

  const SolverKind kind = resolve_solver(options.solver, options.n);
  // Deterministic solvers give the same answer on every run.
  const std::size_t runs =
      (kind == SolverKind::exact || kind == SolverKind::greedy) ? 1 : options.runs;
  const std::size_t count = options.instances;

  std::vector<double> m(count), alpha(count);
  std::vector<char> kept(count);
  std::vector<InstanceOutcome> outcomes(options.keep_outcomes ? count : 0);

  parallel_for(count, options.workers, [&](std::size_t k) {
    const std::uint64_t seed = instance_seed(options.master_seed, options.n, k);
    const Instance inst = generate_instance(options.n, seed);
    SolverParams params = options.params;
    InstanceOutcome outcome;
    outcome.instance_seed = seed;
    outcome.consensus = true;
    Configuration first;
    for (std::size_t r = 0; r < runs; ++r) {
      params.seed = run_seed(seed, r);
      SolveResult res = run_solver(kind, inst, params);
      outcome.run_m_values.push_back(res.m_value);
      if (r == 0) {
        first = res.best_config;
      } else if (!(res.best_config == first)) {
        outcome.consensus = false;
      }
      if (r == 0 || res.m_value > outcome.m_value) {
        outcome.m_value = res.m_value;
        outcome.alpha_value = res.alpha_value;
        outcome.minimizer = std::move(res.best_config);
      }
    }
    m[k] = outcome.m_value;
    alpha[k] = outcome.alpha_value;
    kept[k] = outcome.consensus ? 1 : 0;
    if (options.keep_outcomes) outcomes[k] = std::move(outcome);
  });

  StatsReport report;
  report.all_m_values = m;
  double alpha_sum = 0.0;
  for (std::size_t k = 0; k < count; ++k) {
    if (!kept[k]) continue;
    report.kept_m_values.push_back(m[k]);
    alpha_sum += alpha[k];
  }
  const std::size_t n_kept = report.kept_m_values.size();
  if (n_kept == 0) throw empty_consensus_error(count, runs);

  double sum = 0.0;
  for (double v : report.kept_m_values) sum += v;
  const double mean = sum / static_cast<double>(n_kept);
  double ss = 0.0;
  for (double v : report.kept_m_values) ss += (v - mean) * (v - mean);

  StatsRow& row = report.row;
  row.n = options.n;
  row.m_mean = mean;
  row.m_var = n_kept > 1 ? ss / static_cast<double>(n_kept - 1) : 0.0;
  row.alpha_mean = alpha_sum / static_cast<double>(n_kept);
  row.instances_total = count;
  row.instances_kept = n_kept;
  row.runs_per_instance = runs;
  report.outcomes = std::move(outcomes);
  return report;
}

StatsRow estimate_stats(const StatsOptions& options) {
  return estimate_stats_detailed(options).row;
}

std::vector<std::string> default_instance_ids(std::size_t n, std::size_t count) {
  std::vector<std::string> ids;
  ids.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    std::string suffix;
    std::size_t v = k;
    do {
      suffix.insert(suffix.begin(), static_cast<char>('a' + v % 26));
      v /= 26;
    } while (v-- > 0);
    ids.push_back(std::to_string(n) + suffix);
  }
  return ids;
}

std::uint64_t comparison_instance_seed(std::uint64_t master, std::string_view id) {
  return derive_seed(master, hash_string(id));
}

ComparisonReport compare_solvers(const CompareOptions& options) {
  if (options.betas.empty() || options.qs.empty()) {
    throw std::invalid_argument("parameter grid must be non-empty");
  }
  if (options.restarts < 1) throw std::invalid_argument("restarts must be at least 1");
  if (options.sweeps < 1) throw std::invalid_argument("sweeps must be at least 1");
  const std::vector<std::string> ids = options.instance_ids.empty()
                                           ? default_instance_ids(options.n, 5)
                                           : options.instance_ids;

  std::vector<Instance> instances;
  instances.reserve(ids.size());
  for (const auto& id : ids) {
    instances.push_back(
        generate_instance(options.n, comparison_instance_seed(options.master_seed, id)));
  }

  struct Task {
    std::size_t instance;
    SolverKind kind;
    double beta;
    double q;
    std::uint64_t seed;
  };
  std::vector<Task> tasks;
  for (std::size_t k = 0; k < instances.size(); ++k) {
    const std::uint64_t base = instances[k].seed();
    tasks.push_back({k, SolverKind::greedy, 0.0, 0.0, 0});
    std::size_t slot = 0;
    for (double beta : options.betas) {
      for (double q : options.qs) {
        for (std::size_t r = 0; r < options.restarts; ++r) {
          tasks.push_back({k, SolverKind::pca, beta, q,
                           derive_seed(base, kPcaTaskDomain, slot++)});
        }
      }
    }
    slot = 0;
    for (double beta : options.betas) {
      for (std::size_t r = 0; r < options.restarts; ++r) {
        tasks.push_back({k, SolverKind::metropolis, beta, 1.0,
                         derive_seed(base, kMetropolisTaskDomain, slot++)});
      }
    }
  }

  std::vector<double> task_m(tasks.size());
  parallel_for(tasks.size(), options.workers, [&](std::size_t t) {
    const Task& task = tasks[t];
    SolverParams params;
    params.beta = task.kind == SolverKind::greedy ? 1.0 : task.beta;
    params.q = task.kind == SolverKind::greedy ? 1.0 : task.q;
    params.sweeps = options.sweeps;
    params.beta_units = options.beta_units;
    params.seed = task.seed;
    task_m[t] = run_solver(task.kind, instances[task.instance], params).m_value;
  });

  ComparisonReport report;
  report.rows.resize(ids.size());
  for (std::size_t k = 0; k < ids.size(); ++k) {
    report.rows[k].n = options.n;
    report.rows[k].instance_id = ids[k];
    report.rows[k].m_pca = -INFINITY;
    report.rows[k].m_metropolis = -INFINITY;
  }
  for (std::size_t t = 0; t < tasks.size(); ++t) {
    ComparisonRow& row = report.rows[tasks[t].instance];
    switch (tasks[t].kind) {
      case SolverKind::greedy: row.m_greedy = task_m[t]; break;
      case SolverKind::pca: row.m_pca = std::max(row.m_pca, task_m[t]); break;
      case SolverKind::metropolis:
        row.m_metropolis = std::max(row.m_metropolis, task_m[t]);
        break;
      default: break;
    }
  }
  for (const auto& row : report.rows) {
    report.avg_pca += row.m_pca;
    report.avg_metropolis += row.m_metropolis;
    report.avg_greedy += row.m_greedy;
  }
  const auto count = static_cast<double>(report.rows.size());
  report.avg_pca /= count;
  report.avg_metropolis /= count;
  report.avg_greedy /= count;
  return report;
}

std::vector<TrendRow> concentration_trend(std::span<const std::size_t> sizes,
                                          std::size_t instances, std::size_t runs,
                                          const SolverParams& params,
                                          std::uint64_t master_seed,
                                          unsigned workers) {
  for (std::size_t k = 0; k < sizes.size(); ++k) {
    if (sizes[k] < 2) throw std::invalid_argument("trend sizes must be at least 2");
    if (k > 0 && sizes[k] <= sizes[k - 1]) {
      throw std::invalid_argument("trend sizes must be strictly increasing");
    }
  }
  std::vector<TrendRow> rows;
  for (std::size_t n : sizes) {
    StatsOptions opts;
    opts.n = n;
    opts.instances = instances;
    opts.runs = runs;
    opts.params = params;
    opts.solver = SolverKind::automatic;
    opts.master_seed = master_seed;
    opts.workers = workers;
    const StatsReport report = estimate_stats_detailed(opts);
    TrendRow row;
    row.n = n;
    row.m_mean = report.row.m_mean;
    row.m_var = report.row.m_var;
    for (double v : report.kept_m_values) row.mean_abs_deviation += std::abs(v - row.m_mean);
    row.mean_abs_deviation /= static_cast<double>(report.kept_m_values.size());
    row.instances_kept = report.row.instances_kept;
    row.instances_total = report.row.instances_total;
    rows.push_back(row);
  }
  return rows;
}

void write_stats_csv(std::ostream& out, std::span<const StatsRow> rows) {
  out << "n,m_mean,m_var,alpha_mean,instances_total,instances_kept,runs_per_instance\n";
  for (const auto& r : rows) {
    out << r.n << ',' << format_double(r.m_mean) << ',' << format_double(r.m_var)
        << ',' << format_double(r.alpha_mean) << ',' << r.instances_total << ','
        << r.instances_kept << ',' << r.runs_per_instance << '\n';
  }
}

void write_comparison_csv(std::ostream& out, const ComparisonReport& report) {
  out << "n,instance_id,m_pca,m_metropolis,m_greedy\n";
  for (const auto& r : report.rows) {
    out << r.n << ',' << r.instance_id << ',' << format_double(r.m_pca) << ','
        << format_double(r.m_metropolis) << ',' << format_double(r.m_greedy) << '\n';
  }
  if (!report.rows.empty()) {
    out << report.rows.front().n << ",avg," << format_double(report.avg_pca) << ','
        << format_double(report.avg_metropolis) << ','
        << format_double(report.avg_greedy) << '\n';
  }
}

void write_trend_csv(std::ostream& out, std::span<const TrendRow> rows) {
  out << "n,m_mean,m_var,mean_abs_deviation,instances_kept,instances_total\n";
  for (const auto& r : rows) {
    out << r.n << ',' << format_double(r.m_mean) << ',' << format_double(r.m_var)
        << ',' << format_double(r.mean_abs_deviation) << ',' << r.instances_kept
        << ',' << r.instances_total << '\n';
  }
}

}  // namespace ubqp
