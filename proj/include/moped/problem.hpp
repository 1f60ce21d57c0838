// Copyright 2026 the moped authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "moped/linalg.hpp"

namespace moped {

enum class SetKind { whole_space, box };

/// Closed convex feasible set: the whole space or an axis-aligned box.
struct FeasibleSet {
  SetKind kind = SetKind::whole_space;
  int n = 0;
  Vector lower;  // empty unless kind == box
  Vector upper;

  static FeasibleSet whole_space(int n);
  static FeasibleSet box(Vector lower, Vector upper);
  /// Symmetric box [-a, a]^n.
  static FeasibleSet cube(int n, double a);

  Vector project(std::span<const double> y) const;
  bool contains(std::span<const double> x, double tol) const;
};

struct ScalarFunction {
  std::function<double(std::span<const double>)> value;
  std::function<void(std::span<const double>, std::span<double>)> gradient;
};

/// Per-run evaluation tally. Problems themselves are immutable; counting is
/// the caller's responsibility.
struct EvalTally {
  long f_evals = 0;
  long jac_evals = 0;
};

struct MultiObjectiveProblem {
  std::string name;
  int n = 0;  // dimension
  int m = 0;  // number of objectives
  std::vector<ScalarFunction> objectives;
  FeasibleSet feasible_set;
};

/// F(x) = (f_1(x), ..., f_m(x)). Counts m objective evaluations.
Vector evaluate(const MultiObjectiveProblem& problem, std::span<const double> x,
                EvalTally* tally = nullptr);

/// Row i is the gradient of f_i at x. Counts one Jacobian evaluation.
Matrix jacobian(const MultiObjectiveProblem& problem, std::span<const double> x,
                EvalTally* tally = nullptr);

}  // namespace moped
