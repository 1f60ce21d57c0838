// Copyright 2026 the moped authors
// SPDX-License-Identifier: Apache-2.0

#include "moped/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "moped/errors.hpp"

namespace moped {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

bool dominates(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw InvalidInput("dominates: dimension mismatch");
  bool strict = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] > b[i]) return false;
    if (a[i] < b[i]) strict = true;
  }
  return strict;
}

FrontSet nondominated_filter(const std::vector<FrontPoint>& points) {
  FrontSet front;
  for (std::size_t i = 0; i < points.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < points.size(); ++j) {
      if (j == i) continue;
      if (dominates(points[j].f, points[i].f)) {
        dominated = true;
        break;
      }
    }
    if (!dominated) front.points.push_back(points[i]);
  }
  return front;
}

std::map<std::string, double> purity(const std::map<std::string, FrontSet>& per_solver_fronts) {
  if (per_solver_fronts.empty()) throw InvalidInput("purity: no solvers");
  std::vector<FrontPoint> pooled;
  for (const auto& [solver, front] : per_solver_fronts)
    for (const FrontPoint& point : front.points) {
      FrontPoint tagged = point;
      tagged.solver = solver;
      pooled.push_back(std::move(tagged));
    }
  if (pooled.empty()) throw EmptyFront("purity: combined front is empty");
  const FrontSet reference = nondominated_filter(pooled);

  std::map<std::string, double> out;
  for (const auto& [solver, front] : per_solver_fronts) {
    // |PF_{p,s} intersect PF_p| with membership by exact vector equality: a
    // solver point counts even when the kept copy came from another solver.
    long members = 0;
    for (const FrontPoint& point : front.points) {
      for (const FrontPoint& ref : reference.points)
        if (ref.f == point.f) {
          ++members;
          break;
        }
    }
    const double t_bar =
        static_cast<double>(members) / static_cast<double>(reference.points.size());
    out[solver] = (t_bar != 0.0) ? 1.0 / t_bar : kInf;
  }
  return out;
}

ProfileResult performance_profile(const BenchTable& table) {
  const int num_solvers = static_cast<int>(table.solvers.size());
  const int num_problems = static_cast<int>(table.problems.size());
  if (num_solvers == 0) throw InvalidInput("performance_profile: no solvers");

  // Ratios r_ps = t_ps / min_s t_ps; rows with no finite entry are excluded.
  std::vector<Vector> ratios;
  int excluded = 0;
  for (int p = 0; p < num_problems; ++p) {
    double row_min = kInf;
    for (int s = 0; s < num_solvers; ++s) row_min = std::min(row_min, table.t[p][s]);
    if (!std::isfinite(row_min)) {
      ++excluded;
      continue;
    }
    Vector row(num_solvers);
    for (int s = 0; s < num_solvers; ++s)
      row[s] = std::isfinite(table.t[p][s]) ? table.t[p][s] / row_min : kInf;
    ratios.push_back(std::move(row));
  }

  std::vector<double> breakpoints{1.0};
  for (const Vector& row : ratios)
    for (double r : row)
      if (std::isfinite(r)) breakpoints.push_back(r);
  std::sort(breakpoints.begin(), breakpoints.end());
  breakpoints.erase(std::unique(breakpoints.begin(), breakpoints.end()), breakpoints.end());

  const double count = static_cast<double>(ratios.size());
  ProfileResult result;
  result.excluded_problems = excluded;
  for (int s = 0; s < num_solvers; ++s) {
    ProfileCurve curve;
    curve.solver = table.solvers[s];
    curve.tau = breakpoints;
    curve.gamma.reserve(breakpoints.size());
    for (double tau : breakpoints) {
      long within = 0;
      for (const Vector& row : ratios)
        if (row[s] <= tau) ++within;
      curve.gamma.push_back(count > 0 ? within / count : 0.0);
    }
    result.curves.push_back(std::move(curve));
  }
  return result;
}

}  // namespace moped
