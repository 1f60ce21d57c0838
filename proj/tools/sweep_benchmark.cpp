// Copyright 2026 the moped authors
// SPDX-License-Identifier: Apache-2.0
//
// Timing comparison of the OpenMP kernels against their serial reference
// implementations: the bench sweep and the brute-force grid scan.

#include <chrono>
#include <cstdio>
#include <random>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "moped/bench.hpp"
#include "moped/subproblem.hpp"

namespace {

using namespace moped;

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double run_sweep(bool parallel, int threads, std::vector<BenchRow>* rows_out) {
  BenchConfig config;
  config.problems = {"extended_rosenbrock", "brown_almost_linear", "trigonometric"};
  config.solvers = {"M", "N2"};
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<BenchRow> rows =
      parallel ? bench_sweep_parallel(config, threads) : bench_sweep_serial(config);
  const double elapsed = seconds_since(t0);
  if (rows_out) *rows_out = std::move(rows);
  return elapsed;
}

double run_grid(bool parallel, int repeats, double* checksum) {
  std::mt19937_64 rng(7);
  auto uniform = [&rng](double lo, double hi) {
    return lo + (hi - lo) * static_cast<double>(rng() >> 11) * 0x1.0p-53;
  };
  double sum = 0.0;
  const auto t0 = std::chrono::steady_clock::now();
  for (int rep = 0; rep < repeats; ++rep) {
    Matrix grads(3, Vector(2));
    for (Vector& row : grads)
      for (double& g : row) g = uniform(-10.0, 10.0);
    const ShiftedBox box =
        ShiftedBox::bounds({uniform(-12.0, -1.0), uniform(-12.0, -1.0)},
                           {uniform(1.0, 12.0), uniform(1.0, 12.0)});
    const GridMinimum min = parallel ? brute_force_direction(grads, box, 801)
                                     : brute_force_direction_serial(grads, box, 801);
    sum += min.value;
  }
  *checksum = sum;
  return seconds_since(t0);
}

}  // namespace

int main() {
  int threads = 1;
#ifdef _OPENMP
  threads = omp_get_max_threads();
#endif
  std::printf("moped sweep benchmark (max threads: %d)\n\n", threads);

  std::vector<BenchRow> serial_rows, parallel_rows;
  const double sweep_serial = run_sweep(false, 1, &serial_rows);
  const double sweep_parallel = run_sweep(true, 0, &parallel_rows);
  bool match = serial_rows.size() == parallel_rows.size();
  for (std::size_t i = 0; match && i < serial_rows.size(); ++i)
    match = serial_rows[i].status == parallel_rows[i].status &&
            serial_rows[i].iters == parallel_rows[i].iters &&
            serial_rows[i].final_f == parallel_rows[i].final_f;
  std::printf("bench sweep (486 runs)   serial %7.3f s   openmp %7.3f s   speedup %.2fx   %s\n",
              sweep_serial, sweep_parallel, sweep_serial / sweep_parallel,
              match ? "results match" : "RESULTS DIFFER");

  double checksum_serial = 0.0, checksum_parallel = 0.0;
  const double grid_serial = run_grid(false, 40, &checksum_serial);
  const double grid_parallel = run_grid(true, 40, &checksum_parallel);
  std::printf("grid scan (40x801^2)     serial %7.3f s   openmp %7.3f s   speedup %.2fx   %s\n",
              grid_serial, grid_parallel, grid_serial / grid_parallel,
              checksum_serial == checksum_parallel ? "results match" : "RESULTS DIFFER");
  return (match && checksum_serial == checksum_parallel) ? 0 : 1;
}
