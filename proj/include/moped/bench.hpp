// Copyright 2026 the moped authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "moped/metrics.hpp"
#include "moped/solver.hpp"
#include "moped/testsuite.hpp"

namespace moped {

struct BenchConfig {
  std::vector<std::string> problems;  // empty = all 15 MGH pairings
  std::vector<std::string> solvers;   // empty = M, N1, N2, Nh
  int n = 4;
  double a = 5.12;
  double eps = 1e-4;
  int max_iters = 1000;
  unsigned long long seed = 0;  // reserved for randomized sampling; the sweep
                                // itself is deterministic
  int threads = 0;              // 0 = library default

  std::vector<std::string> resolved_problems() const;
  std::vector<std::string> resolved_solvers() const;
};

struct BenchRow {
  std::string problem;
  int start_id = 0;
  std::string solver;
  RunStatus status = RunStatus::MaxIterations;
  int iters = 0;
  long fevals = 0;
  long jevals = 0;
  Vector final_f;
  double final_crit = 0;
  double wall_seconds = 0;  // never serialized: CSV bodies stay reproducible
};

/// All (problem, start, solver) runs in deterministic row order
/// (problem, start index, solver). Serial reference implementation.
std::vector<BenchRow> bench_sweep_serial(const BenchConfig& config);

/// OpenMP fan-out over the same run list; rows land at their precomputed
/// index, so output order and content match the serial sweep exactly.
std::vector<BenchRow> bench_sweep_parallel(const BenchConfig& config, int threads);

/// Dispatches on config.threads (1 = serial reference).
std::vector<BenchRow> bench_sweep(const BenchConfig& config);

/// CSV: problem,start_id,solver,status,iters,fevals,jevals,final_f_1..m,final_crit.
/// Metadata lives in leading '#' comments; no timestamps anywhere.
void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows,
                     const BenchConfig& config);
std::vector<BenchRow> read_bench_csv(std::istream& in);

enum class BenchMetric { iterations, fevals };

/// Performance table over (problem, start) pairs: t = max(count, 1) for
/// converged runs, +inf otherwise.
BenchTable build_performance_table(const std::vector<BenchRow>& rows, BenchMetric metric);

/// Per-problem purity table restricted to the two named solvers; fronts use
/// final objective vectors of converged runs only.
BenchTable pairwise_purity_tables(const std::vector<BenchRow>& rows,
                                  const std::pair<std::string, std::string>& solvers);

void write_profile_csv(std::ostream& out, const ProfileResult& profile,
                       const std::string& metric_label);

}  // namespace moped
