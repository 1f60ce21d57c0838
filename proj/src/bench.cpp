// Copyright 2026 the moped authors
// SPDX-License-Identifier: Apache-2.0

#include "moped/bench.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <set>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "moped/csv.hpp"
#include "moped/errors.hpp"

namespace moped {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct RunSpec {
  int problem_index;
  int start_index;
  int solver_index;
};

BenchRow execute(const MultiObjectiveProblem& problem, const std::string& problem_name,
                 int start_id, const Vector& x0, const Preset& preset,
                 const BenchConfig& config) {
  SolverConfig solver_config = preset.config;
  solver_config.eps = config.eps;
  solver_config.max_iters = config.max_iters;
  solver_config.record_trajectory = false;

  const RunResult result = run(problem, x0, preset.rule, solver_config);

  BenchRow row;
  row.problem = problem_name;
  row.start_id = start_id;
  row.solver = preset.name;
  row.status = result.status;
  row.iters = result.iterations;
  row.fevals = result.f_evals;
  row.jevals = result.jac_evals;
  row.final_f = result.final_F;
  row.final_crit = result.final_crit;
  row.wall_seconds = result.wall_seconds;
  return row;
}

}  // namespace

std::vector<std::string> BenchConfig::resolved_problems() const {
  if (!problems.empty()) return problems;
  std::vector<std::string> names;
  for (const MghInfo& info : mgh_catalog()) names.push_back(info.name);
  return names;
}

std::vector<std::string> BenchConfig::resolved_solvers() const {
  if (!solvers.empty()) return solvers;
  return {"M", "N1", "N2", "Nh"};
}

std::vector<BenchRow> bench_sweep_serial(const BenchConfig& config) {
  const std::vector<std::string> problem_names = config.resolved_problems();
  const std::vector<std::string> solver_names = config.resolved_solvers();
  const std::vector<Vector> starts = standard_start_grid(config.n, config.a);

  std::vector<MultiObjectiveProblem> problems;
  for (const std::string& name : problem_names)
    problems.push_back(build_benchmark(name, config.n, config.a));
  std::vector<Preset> presets;
  for (const std::string& name : solver_names) presets.push_back(preset_solver(name));

  std::vector<BenchRow> rows;
  rows.reserve(problems.size() * starts.size() * presets.size());
  for (std::size_t p = 0; p < problems.size(); ++p)
    for (std::size_t s = 0; s < starts.size(); ++s)
      for (std::size_t v = 0; v < presets.size(); ++v)
        rows.push_back(execute(problems[p], problem_names[p], static_cast<int>(s), starts[s],
                               presets[v], config));
  return rows;
}

std::vector<BenchRow> bench_sweep_parallel(const BenchConfig& config, int threads) {
  const std::vector<std::string> problem_names = config.resolved_problems();
  const std::vector<std::string> solver_names = config.resolved_solvers();
  const std::vector<Vector> starts = standard_start_grid(config.n, config.a);

  std::vector<MultiObjectiveProblem> problems;
  for (const std::string& name : problem_names)
    problems.push_back(build_benchmark(name, config.n, config.a));
  std::vector<Preset> presets;
  for (const std::string& name : solver_names) presets.push_back(preset_solver(name));

  std::vector<RunSpec> specs;
  for (std::size_t p = 0; p < problems.size(); ++p)
    for (std::size_t s = 0; s < starts.size(); ++s)
      for (std::size_t v = 0; v < presets.size(); ++v)
        specs.push_back({static_cast<int>(p), static_cast<int>(s), static_cast<int>(v)});

  std::vector<BenchRow> rows(specs.size());
  const long total = static_cast<long>(specs.size());
#ifdef _OPENMP
  if (threads > 0) omp_set_num_threads(threads);
#else
  (void)threads;
#endif
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < total; ++i) {
    const RunSpec& spec = specs[i];
    rows[i] = execute(problems[spec.problem_index], problem_names[spec.problem_index],
                      spec.start_index, starts[spec.start_index], presets[spec.solver_index],
                      config);
  }
  return rows;
}

std::vector<BenchRow> bench_sweep(const BenchConfig& config) {
  if (config.threads == 1) return bench_sweep_serial(config);
  return bench_sweep_parallel(config, config.threads);
}

void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows,
                     const BenchConfig& config) {
  const int m = rows.empty() ? 2 : static_cast<int>(rows.front().final_f.size());
  out << "# moped bench results\n";
  out << "# eps=" << format_double(config.eps) << " max_iters=" << config.max_iters
      << " n=" << config.n << " a=" << format_double(config.a) << "\n";
  out << "# conventions: non-converged runs get t=+inf in performance tables;"
         " purity fronts use converged runs only\n";
  out << "problem,start_id,solver,status,iters,fevals,jevals";
  for (int i = 1; i <= m; ++i) out << ",final_f_" << i;
  out << ",final_crit\n";
  for (const BenchRow& row : rows) {
    out << row.problem << ',' << row.start_id << ',' << row.solver << ','
        << to_string(row.status) << ',' << row.iters << ',' << row.fevals << ','
        << row.jevals;
    for (double v : row.final_f) out << ',' << format_double(v);
    out << ',' << format_double(row.final_crit) << '\n';
  }
}

std::vector<BenchRow> read_bench_csv(std::istream& in) {
  std::vector<BenchRow> rows;
  std::string line;
  long line_number = 0;
  bool header_seen = false;
  int m = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const std::vector<std::string> fields = split_csv_line(line);
    if (!header_seen) {
      if (fields.size() < 9 || fields[0] != "problem")
        throw CsvParseError("expected bench CSV header", line_number);
      m = static_cast<int>(fields.size()) - 8;
      header_seen = true;
      continue;
    }
    if (static_cast<int>(fields.size()) != 8 + m)
      throw CsvParseError("wrong field count", line_number);
    BenchRow row;
    row.problem = fields[0];
    row.start_id = static_cast<int>(parse_long_field(fields[1], line_number));
    row.solver = fields[2];
    row.status = run_status_from_string(fields[3]);
    row.iters = static_cast<int>(parse_long_field(fields[4], line_number));
    row.fevals = parse_long_field(fields[5], line_number);
    row.jevals = parse_long_field(fields[6], line_number);
    for (int i = 0; i < m; ++i)
      row.final_f.push_back(parse_double_field(fields[7 + i], line_number));
    row.final_crit = parse_double_field(fields[7 + m], line_number);
    rows.push_back(std::move(row));
  }
  if (!header_seen) throw CsvParseError("empty results file", line_number);
  return rows;
}

BenchTable build_performance_table(const std::vector<BenchRow>& rows, BenchMetric metric) {
  std::vector<std::string> solvers;
  std::vector<std::string> problems;  // (problem, start) pair labels
  std::map<std::string, int> solver_index;
  std::map<std::string, int> problem_index;
  for (const BenchRow& row : rows) {
    if (!solver_index.count(row.solver)) {
      solver_index[row.solver] = static_cast<int>(solvers.size());
      solvers.push_back(row.solver);
    }
    const std::string label = row.problem + "#" + std::to_string(row.start_id);
    if (!problem_index.count(label)) {
      problem_index[label] = static_cast<int>(problems.size());
      problems.push_back(label);
    }
  }
  BenchTable table;
  table.solvers = solvers;
  table.problems = problems;
  table.t.assign(problems.size(), Vector(solvers.size(), kInf));
  for (const BenchRow& row : rows) {
    if (row.status != RunStatus::Converged) continue;
    const long count = (metric == BenchMetric::iterations) ? row.iters : row.fevals;
    const int p = problem_index[row.problem + "#" + std::to_string(row.start_id)];
    const int s = solver_index[row.solver];
    // converged in zero iterations happens (a start can already be critical);
    // clamp to 1 to keep performance ratios defined
    table.t[p][s] = static_cast<double>(std::max(count, 1L));
  }
  return table;
}

BenchTable pairwise_purity_tables(const std::vector<BenchRow>& rows,
                                  const std::pair<std::string, std::string>& solvers) {
  std::set<std::string> present;
  for (const BenchRow& row : rows) present.insert(row.solver);
  if (!present.count(solvers.first))
    throw UnknownProblem("pairwise_purity_tables: no rows for solver " + solvers.first);
  if (!present.count(solvers.second))
    throw UnknownProblem("pairwise_purity_tables: no rows for solver " + solvers.second);

  std::vector<std::string> problem_names;
  std::map<std::string, std::map<std::string, std::vector<FrontPoint>>> by_problem;
  for (const BenchRow& row : rows) {
    if (row.solver != solvers.first && row.solver != solvers.second) continue;
    if (!by_problem.count(row.problem)) problem_names.push_back(row.problem);
    auto& per_solver = by_problem[row.problem];
    per_solver.try_emplace(solvers.first);
    per_solver.try_emplace(solvers.second);
    if (row.status != RunStatus::Converged) continue;
    FrontPoint point;
    point.f = row.final_f;
    point.solver = row.solver;
    point.start_id = row.start_id;
    per_solver[row.solver].push_back(std::move(point));
  }

  BenchTable table;
  table.solvers = {solvers.first, solvers.second};
  table.problems = problem_names;
  table.t.assign(problem_names.size(), Vector(2, kInf));
  for (std::size_t p = 0; p < problem_names.size(); ++p) {
    const auto& per_solver = by_problem[problem_names[p]];
    std::map<std::string, FrontSet> fronts;
    for (const auto& [solver, points] : per_solver)
      fronts[solver] = nondominated_filter(points);
    try {
      const std::map<std::string, double> values = purity(fronts);
      table.t[p][0] = values.at(solvers.first);
      table.t[p][1] = values.at(solvers.second);
    } catch (const EmptyFront&) {
      // no converged run from either solver: the row stays +inf and the
      // profile excludes it with a warning count
    }
  }
  return table;
}

void write_profile_csv(std::ostream& out, const ProfileResult& profile,
                       const std::string& metric_label) {
  out << "# moped performance profile, metric=" << metric_label << "\n";
  out << "# excluded_problems=" << profile.excluded_problems << "\n";
  out << "solver,tau,gamma\n";
  for (const ProfileCurve& curve : profile.curves)
    for (std::size_t i = 0; i < curve.tau.size(); ++i)
      out << curve.solver << ',' << format_double(curve.tau[i]) << ','
          << format_double(curve.gamma[i]) << '\n';
}

}  // namespace moped
