// Copyright 2026 the moped authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <sstream>

#include "moped/bench.hpp"
#include "moped/errors.hpp"

using namespace moped;

namespace {

BenchRow make_row(const std::string& problem, int start, const std::string& solver,
                  RunStatus status, int iters, Vector final_f) {
  BenchRow row;
  row.problem = problem;
  row.start_id = start;
  row.solver = solver;
  row.status = status;
  row.iters = iters;
  row.fevals = 10 * iters + 2;
  row.jevals = iters + 1;
  row.final_f = std::move(final_f);
  row.final_crit = status == RunStatus::Converged ? 5e-5 : 2e-2;
  return row;
}

}  // namespace

TEST_CASE("parallel sweep matches the serial reference row by row") {
  BenchConfig config;
  config.problems = {"extended_rosenbrock"};
  config.solvers = {"M", "N2"};
  config.max_iters = 400;

  const std::vector<BenchRow> serial = bench_sweep_serial(config);
  const std::vector<BenchRow> parallel = bench_sweep_parallel(config, 0);
  REQUIRE(serial.size() == 162);  // 81 starts x 2 solvers
  REQUIRE(parallel.size() == serial.size());
  for (std::size_t i = 0; i < serial.size(); ++i) {
    CHECK(serial[i].problem == parallel[i].problem);
    CHECK(serial[i].start_id == parallel[i].start_id);
    CHECK(serial[i].solver == parallel[i].solver);
    CHECK(serial[i].status == parallel[i].status);
    CHECK(serial[i].iters == parallel[i].iters);
    CHECK(serial[i].fevals == parallel[i].fevals);
    CHECK(serial[i].final_f == parallel[i].final_f);
    CHECK(serial[i].final_crit == parallel[i].final_crit);
  }

  // byte-identical CSV bodies
  std::ostringstream csv_serial, csv_parallel;
  write_bench_csv(csv_serial, serial, config);
  write_bench_csv(csv_parallel, parallel, config);
  CHECK(csv_serial.str() == csv_parallel.str());

  // deterministic row order: problem, then start index, then solver
  for (std::size_t i = 1; i < serial.size(); ++i) {
    const auto key = [](const BenchRow& row) {
      return std::make_tuple(row.problem, row.start_id, row.solver);
    };
    CHECK(key(serial[i - 1]) < key(serial[i]));
  }
}

TEST_CASE("bench CSV round-trips") {
  BenchConfig config;
  std::vector<BenchRow> rows;
  rows.push_back(make_row("alpha", 0, "M", RunStatus::Converged, 12, {1.5, 2.25}));
  rows.push_back(make_row("alpha", 1, "M", RunStatus::MaxIterations, 1000, {0.5, 1.0 / 3.0}));
  std::ostringstream out;
  write_bench_csv(out, rows, config);

  std::istringstream in(out.str());
  const std::vector<BenchRow> parsed = read_bench_csv(in);
  REQUIRE(parsed.size() == 2);
  CHECK(parsed[0].problem == "alpha");
  CHECK(parsed[0].status == RunStatus::Converged);
  CHECK(parsed[0].iters == 12);
  CHECK(parsed[1].final_f == rows[1].final_f);  // exact round trip
  CHECK(parsed[1].status == RunStatus::MaxIterations);

  std::istringstream empty("");
  CHECK_THROWS_AS(read_bench_csv(empty), CsvParseError);
  std::istringstream garbled("problem,start_id,solver,status,iters,fevals,jevals,final_f_1,"
                             "final_crit\nalpha,zero,M,Converged,1,1,1,0.0,0.0\n");
  CHECK_THROWS_AS(read_bench_csv(garbled), CsvParseError);
}

TEST_CASE("performance tables use max(count,1) and +inf for failures") {
  std::vector<BenchRow> rows;
  rows.push_back(make_row("p", 0, "A", RunStatus::Converged, 0, {1, 1}));  // critical start
  rows.push_back(make_row("p", 0, "B", RunStatus::Converged, 40, {1, 1}));
  rows.push_back(make_row("p", 1, "A", RunStatus::MaxIterations, 1000, {1, 1}));
  rows.push_back(make_row("p", 1, "B", RunStatus::Converged, 7, {1, 1}));
  const BenchTable table = build_performance_table(rows, BenchMetric::iterations);
  REQUIRE(table.problems.size() == 2);
  CHECK(table.t[0][0] == 1.0);  // clamped from 0
  CHECK(table.t[0][1] == 40.0);
  CHECK(std::isinf(table.t[1][0]));
  CHECK(table.t[1][1] == 7.0);

  const BenchTable fevals = build_performance_table(rows, BenchMetric::fevals);
  CHECK(fevals.t[1][1] == 72.0);
}

TEST_CASE("pairwise purity tables reproduce the dominance example") {
  std::vector<BenchRow> rows;
  rows.push_back(make_row("p", 0, "A", RunStatus::Converged, 3, {1, 3}));
  rows.push_back(make_row("p", 1, "A", RunStatus::Converged, 3, {2, 2}));
  rows.push_back(make_row("p", 0, "B", RunStatus::Converged, 3, {3, 1}));
  rows.push_back(make_row("p", 1, "B", RunStatus::Converged, 3, {2, 2.5}));
  // non-converged points never enter fronts
  rows.push_back(make_row("p", 2, "B", RunStatus::MaxIterations, 1000, {0, 0}));

  const BenchTable table = pairwise_purity_tables(rows, {"A", "B"});
  REQUIRE(table.problems.size() == 1);
  CHECK(table.t[0][0] == doctest::Approx(1.5));
  CHECK(table.t[0][1] == doctest::Approx(3.0));

  CHECK_THROWS_AS(pairwise_purity_tables(rows, {"A", "missing"}), UnknownProblem);
}

TEST_CASE("pairwise purity against itself gives gamma(1) = 1") {
  std::vector<BenchRow> rows;
  rows.push_back(make_row("p", 0, "A", RunStatus::Converged, 3, {1, 3}));
  rows.push_back(make_row("p", 1, "A", RunStatus::Converged, 5, {2, 2}));
  const BenchTable table = pairwise_purity_tables(rows, {"A", "A"});
  const ProfileResult profile = performance_profile(table);
  for (const ProfileCurve& curve : profile.curves) CHECK(curve.gamma.front() == 1.0);
}

TEST_CASE("a problem with no converged runs becomes an all-failure purity row") {
  std::vector<BenchRow> rows;
  rows.push_back(make_row("dead", 0, "A", RunStatus::MaxIterations, 1000, {1, 1}));
  rows.push_back(make_row("dead", 0, "B", RunStatus::MaxIterations, 1000, {1, 1}));
  rows.push_back(make_row("alive", 0, "A", RunStatus::Converged, 5, {1, 1}));
  rows.push_back(make_row("alive", 0, "B", RunStatus::Converged, 5, {2, 2}));
  const BenchTable table = pairwise_purity_tables(rows, {"A", "B"});
  REQUIRE(table.problems.size() == 2);
  const ProfileResult profile = performance_profile(table);
  CHECK(profile.excluded_problems == 1);
}
