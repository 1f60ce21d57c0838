// Copyright 2026 the moped authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>
#include <string>
#include <vector>

#include "moped/problem.hpp"

namespace moped {

/// f(x) = 10n + sum_i [x_i^2 - 10 cos(2 pi x_i)], the Rastrigin function,
/// with its analytic gradient 2 x_i + 20 pi sin(2 pi x_i).
ScalarFunction make_rastrigin(int n);

struct MghInfo {
  std::string name;          // canonical snake_case identifier
  std::string display_name;  // collection name
  int min_n = 1;
  int n_multiple = 1;  // dimension must be a positive multiple of this
};

/// The 15 variable-dimension functions of the More-Garbow-Hillstrom
/// collection, as sums of squared residuals with analytic gradients.
const std::vector<MghInfo>& mgh_catalog();

ScalarFunction make_mgh(const std::string& name, int n);

/// Bi-objective benchmark problem: f1 = Rastrigin, f2 = the named MGH
/// objective, on the box [-a, a]^n.
MultiObjectiveProblem build_benchmark(const std::string& mgh_name, int n, double a);

/// The 81 starting points with every coordinate in {-a, 0, a} (n = 4 only),
/// indexed lexicographically with the last coordinate fastest.
std::vector<Vector> standard_start_grid(int n, double a);

struct GradCheckReport {
  std::string name;
  double max_relative_error = 0;
  bool pass = false;
};

/// Central-difference check of the analytic gradient at the given points.
/// Relative error uses denominator max(1, |grad f(x)|).
GradCheckReport check_gradient(const ScalarFunction& objective, const std::string& name,
                               const std::vector<Vector>& points, double h, double tol);

/// Deterministic uniform samples in [-a, a]^n.
std::vector<Vector> sample_box(int count, int n, double a, unsigned long long seed);

}  // namespace moped
