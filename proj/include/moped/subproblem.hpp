// Copyright 2026 the moped authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <span>
#include <string>
#include <vector>

#include "moped/errors.hpp"
#include "moped/linalg.hpp"
#include "moped/problem.hpp"

namespace moped {

/// The shifted feasible set Omega - x. Components are +-infinity for the
/// whole space. Always contains 0 (x is feasible).
struct ShiftedBox {
  Vector lower;
  Vector upper;

  static ShiftedBox from(const FeasibleSet& set, std::span<const double> x);
  static ShiftedBox unbounded(int n);
  static ShiftedBox bounds(Vector lower, Vector upper);

  int dim() const { return static_cast<int>(lower.size()); }
  bool bounded() const;
};

/// Solution of min_{d in Omega-x} max_i grad_i . d + |d|^2/2 with a
/// primal-dual certificate.
struct DirectionSolution {
  Vector s;            // minimizer
  Vector lambda;       // dual weights on the unit simplex
  double h_value = 0;  // h_x(s)
  double xi = 0;       // max_i grad_i . s + |s|^2/2
  double gap = 0;      // primal minus dual value at termination, >= 0
  int inner_iterations = 0;
};

class SubproblemNotConverged : public Error {
 public:
  SubproblemNotConverged(const std::string& what, DirectionSolution best)
      : Error(what), best(std::move(best)) {}
  DirectionSolution best;
};

class DirectionConditionViolated : public Error {
 public:
  using Error::Error;
};

/// Euclidean projection onto {v >= 0, sum v = 1} (sort-and-threshold).
Vector project_simplex(std::span<const double> v);

/// Minimizer of sum_i lambda_i grad_i . d + |d|^2/2 over the box:
/// componentwise clamp of -g(lambda).
Vector inner_minimizer(std::span<const double> lambda, const Matrix& grads,
                       const ShiftedBox& box);

/// Lagrangian dual value psi(lambda) = g(lambda) . d(lambda) + |d(lambda)|^2/2.
double dual_value(std::span<const double> lambda, const Matrix& grads, const ShiftedBox& box);

/// Default tolerance for the dual solve, scaled by the gradient magnitudes.
double default_subproblem_tolerance(const Matrix& grads, double scale = 1e-10);

/// Projected gradient ascent on the dual over the simplex, with Armijo
/// backtracking, until the duality gap is at most tol. Throws
/// SubproblemNotConverged (carrying the best iterate) past max_iter.
DirectionSolution solve_direction(const Matrix& grads, const ShiftedBox& box, double tol,
                                  int max_iter, const Vector* initial_lambda = nullptr);

/// The Pareto criticality measure |s(x)|.
double criticality(const DirectionSolution& sol);

struct GridMinimum {
  Vector d;
  double value = 0;
};

/// Exhaustive evaluation of h_x on a uniform grid (independent oracle,
/// n <= 3). For an unbounded box the grid covers [-G, G]^n with
/// G = max_i |grad_i|, which contains the true minimizer.
GridMinimum brute_force_direction(const Matrix& grads, const ShiftedBox& box, int resolution);

/// Serial reference for the grid scan; the OpenMP kernel must match it.
GridMinimum brute_force_direction_serial(const Matrix& grads, const ShiftedBox& box,
                                         int resolution);

}  // namespace moped
