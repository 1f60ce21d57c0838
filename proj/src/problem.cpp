// Copyright 2026 the moped authors
// SPDX-License-Identifier: Apache-2.0

#include "moped/problem.hpp"

#include <algorithm>
#include <cmath>

#include "moped/errors.hpp"

namespace moped {

FeasibleSet FeasibleSet::whole_space(int n) {
  FeasibleSet set;
  set.kind = SetKind::whole_space;
  set.n = n;
  return set;
}

FeasibleSet FeasibleSet::box(Vector lower, Vector upper) {
  if (lower.size() != upper.size()) throw InvalidInput("box bounds size mismatch");
  for (std::size_t i = 0; i < lower.size(); ++i)
    if (!(lower[i] <= upper[i])) throw InvalidInput("box requires lower <= upper");
  FeasibleSet set;
  set.kind = SetKind::box;
  set.n = static_cast<int>(lower.size());
  set.lower = std::move(lower);
  set.upper = std::move(upper);
  return set;
}

FeasibleSet FeasibleSet::cube(int n, double a) {
  if (n < 1 || !(a > 0.0)) throw InvalidInput("cube requires n >= 1, a > 0");
  return box(Vector(n, -a), Vector(n, a));
}

Vector FeasibleSet::project(std::span<const double> y) const {
  if (static_cast<int>(y.size()) != n) throw InvalidInput("project: dimension mismatch");
  Vector out(y.begin(), y.end());
  if (kind == SetKind::box)
    for (int i = 0; i < n; ++i) out[i] = std::clamp(out[i], lower[i], upper[i]);
  return out;
}

bool FeasibleSet::contains(std::span<const double> x, double tol) const {
  const Vector p = project(x);
  return inf_distance(x, p) <= tol;
}

Vector evaluate(const MultiObjectiveProblem& problem, std::span<const double> x,
                EvalTally* tally) {
  if (static_cast<int>(x.size()) != problem.n)
    throw InvalidInput("evaluate: dimension mismatch for problem " + problem.name);
  Vector values(problem.m);
  for (int i = 0; i < problem.m; ++i) values[i] = problem.objectives[i].value(x);
  if (tally) tally->f_evals += problem.m;
  if (!all_finite(values))
    throw NonFiniteValue("evaluate: non-finite objective value for problem " + problem.name);
  return values;
}

Matrix jacobian(const MultiObjectiveProblem& problem, std::span<const double> x,
                EvalTally* tally) {
  if (static_cast<int>(x.size()) != problem.n)
    throw InvalidInput("jacobian: dimension mismatch for problem " + problem.name);
  Matrix rows(problem.m, Vector(problem.n));
  for (int i = 0; i < problem.m; ++i) {
    problem.objectives[i].gradient(x, rows[i]);
    if (!all_finite(rows[i]))
      throw NonFiniteValue("jacobian: non-finite gradient for problem " + problem.name);
  }
  if (tally) tally->jac_evals += 1;
  return rows;
}

}  // namespace moped
