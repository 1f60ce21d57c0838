// Copyright 2026 the moped authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "moped/linalg.hpp"

namespace moped {

/// a dominates b: a <= b componentwise with at least one strict component.
/// Exact floating-point comparisons.
bool dominates(std::span<const double> a, std::span<const double> b);

struct FrontPoint {
  Vector f;
  std::string solver;
  int start_id = -1;
};

struct FrontSet {
  std::vector<FrontPoint> points;
};

/// Keeps exactly the points not dominated by any input point; duplicates of
/// a kept value are all kept.
FrontSet nondominated_filter(const std::vector<FrontPoint>& points);

/// Purity values 1/t-bar (or +inf when t-bar = 0), where t-bar is the
/// fraction of the combined front contributed by each solver. Membership is
/// by exact vector equality.
std::map<std::string, double> purity(const std::map<std::string, FrontSet>& per_solver_fronts);

struct BenchTable {
  std::vector<std::string> solvers;
  std::vector<std::string> problems;
  std::vector<Vector> t;  // t[problem][solver], +inf marks failure
};

struct ProfileCurve {
  std::string solver;
  std::vector<double> tau;    // shared breakpoints, sorted ascending, tau[0] = 1
  std::vector<double> gamma;  // nondecreasing, in [0,1]
};

struct ProfileResult {
  std::vector<ProfileCurve> curves;
  int excluded_problems = 0;  // rows where every solver failed
};

/// Dolan-More performance profile gamma_s(tau) = |{p : t_ps / min_s t_ps <=
/// tau}| / |P|, sampled at every finite ratio breakpoint.
ProfileResult performance_profile(const BenchTable& table);

}  // namespace moped
