// Copyright 2026 the moped authors
// SPDX-License-Identifier: Apache-2.0

#include "moped/solver.hpp"

#include <chrono>
#include <cmath>
#include <iostream>
#include <limits>
#include <ostream>

#include "moped/csv.hpp"
#include "moped/errors.hpp"

namespace moped {

int MkPolicy::resolve(int m) const {
  switch (kind) {
    case Kind::constant: return std::min(value, m);
    case Kind::half: return (m + 1) / 2;
    case Kind::all: return m;
  }
  return 0;
}

void SolverConfig::validate() const {
  if (!(rho > 0.0 && rho < 1.0)) throw InvalidInput("SolverConfig: rho must be in (0,1)");
  if (!(beta > 0.0 && beta < 1.0)) throw InvalidInput("SolverConfig: beta must be in (0,1)");
  if (!(eps > 0.0)) throw InvalidInput("SolverConfig: eps must be positive");
  if (!(c1 > 0.0 && c2 > 0.0)) throw InvalidInput("SolverConfig: c1, c2 must be positive");
  if (max_iters < 0 || max_backtracks < 0)
    throw InvalidInput("SolverConfig: iteration caps must be nonnegative");
  if (mk.kind == MkPolicy::Kind::constant && mk.value < 0)
    throw InvalidInput("SolverConfig: mk must be nonnegative");
}

const char* to_string(RunStatus status) {
  switch (status) {
    case RunStatus::Converged: return "Converged";
    case RunStatus::MaxIterations: return "MaxIterations";
    case RunStatus::StepSizeTooSmall: return "StepSizeTooSmall";
    case RunStatus::SubproblemNotConverged: return "SubproblemNotConverged";
  }
  return "Unknown";
}

RunStatus run_status_from_string(const std::string& text) {
  if (text == "Converged") return RunStatus::Converged;
  if (text == "MaxIterations") return RunStatus::MaxIterations;
  if (text == "StepSizeTooSmall") return RunStatus::StepSizeTooSmall;
  if (text == "SubproblemNotConverged") return RunStatus::SubproblemNotConverged;
  throw InvalidInput("unknown run status: " + text);
}

namespace {

DirectionSolution direction_from_grads(const Matrix& grads, const ShiftedBox& box,
                                       const SolverConfig& config) {
  const double tol = default_subproblem_tolerance(grads, config.subproblem_tol_scale);
  DirectionSolution sol = solve_direction(grads, box, tol, config.subproblem_max_iter);

  // d = s(x), so conditions (max grad.d <= -c1|s|^2, |d| <= c2|s|) must hold
  // with c1 = c2 = 1 up to dual-solve inexactness; a violation beyond 10*tol
  // signals a subproblem accuracy bug.
  const double s2 = norm_squared(sol.s);
  double max_gd = -std::numeric_limits<double>::infinity();
  for (const Vector& row : grads) max_gd = std::max(max_gd, dot(row, sol.s));
  if (max_gd > -config.c1 * s2 + 10.0 * tol)
    throw DirectionConditionViolated("direction: descent condition violated by " +
                                     std::to_string(max_gd + config.c1 * s2));
  if (norm(sol.s) > config.c2 * norm(sol.s) + 10.0 * tol)
    throw DirectionConditionViolated("direction: norm condition violated");
  return sol;
}

}  // namespace

DirectionSolution direction(const MultiObjectiveProblem& problem, std::span<const double> x,
                            const SolverConfig& config, EvalTally* tally) {
  const Matrix grads = jacobian(problem, x, tally);
  return direction_from_grads(grads, ShiftedBox::from(problem.feasible_set, x), config);
}

LineSearchResult line_search(const MultiObjectiveProblem& problem, std::span<const double> x_k,
                             const Vector& F_k, const Matrix& grads, const Vector& d,
                             const RuleState& rule_state, int k, const SolverConfig& config,
                             EvalTally* tally) {
  const int n = problem.n;
  const int m = problem.m;
  const int mk = config.mk.resolve(m);

  Vector grad_dot_d(m);
  for (int i = 0; i < m; ++i) grad_dot_d[i] = dot(grads[i], d);

  LineSearchResult result;
  double alpha = 1.0;
  for (int ell = 0; ell <= config.max_backtracks; ++ell, alpha *= config.beta) {
    Vector x_trial(n);
    for (int j = 0; j < n; ++j) x_trial[j] = x_k[j] + alpha * d[j];
    const Vector F_trial = evaluate(problem, x_trial, tally);
    const Vector nu = relaxation(rule_state, k, ell, F_k, F_trial);

    int armijo_count = 0;
    bool relaxed_ok = true;
    for (int i = 0; i < m; ++i) {
      const double armijo_rhs = F_k[i] + config.rho * alpha * grad_dot_d[i];
      if (F_trial[i] <= armijo_rhs) ++armijo_count;
      if (!(F_trial[i] <= armijo_rhs + nu[i])) relaxed_ok = false;
    }
    if (armijo_count >= mk && relaxed_ok) {
      result.ell = ell;
      result.alpha = alpha;
      result.x_next = std::move(x_trial);
      result.F_next = F_trial;
      result.nu = nu;
      result.armijo_set_size = armijo_count;
      result.accepted = true;
      return result;
    }
  }
  result.accepted = false;
  return result;
}

RunResult run(const MultiObjectiveProblem& problem, Vector x0, const RuleKind& rule,
              const SolverConfig& config) {
  config.validate();
  const auto t_start = std::chrono::steady_clock::now();

  RunResult result;
  EvalTally tally;

  if (!problem.feasible_set.contains(x0, 1e-9)) {
    std::cerr << "warning: projecting infeasible start point onto the feasible set\n";
    x0 = problem.feasible_set.project(x0);
  }

  Vector x = std::move(x0);
  Vector F = evaluate(problem, x, &tally);
  RuleState rule_state = rule_init(rule, F);

  auto finish = [&](RunStatus status, Vector final_x, Vector final_F, double crit,
                    std::string message = {}) {
    result.status = status;
    result.final_x = std::move(final_x);
    result.final_F = std::move(final_F);
    result.final_crit = crit;
    result.f_evals = tally.f_evals;
    result.jac_evals = tally.jac_evals;
    result.message = std::move(message);
    result.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    return result;
  };

  for (int k = 0;; ++k) {
    const Matrix grads = jacobian(problem, x, &tally);
    DirectionSolution sol;
    try {
      sol = direction_from_grads(grads, ShiftedBox::from(problem.feasible_set, x), config);
    } catch (const SubproblemNotConverged& e) {
      result.iterations = k;
      return finish(RunStatus::SubproblemNotConverged, x, F, criticality(e.best), e.what());
    } catch (const DirectionConditionViolated& e) {
      result.iterations = k;
      return finish(RunStatus::SubproblemNotConverged, x, F,
                    std::numeric_limits<double>::quiet_NaN(), e.what());
    }
    const double crit = criticality(sol);
    if (crit <= config.eps) {
      result.iterations = k;
      return finish(RunStatus::Converged, x, F, crit);
    }
    if (k >= config.max_iters) {
      result.iterations = k;
      return finish(RunStatus::MaxIterations, x, F, crit);
    }

    const LineSearchResult ls =
        line_search(problem, x, F, grads, sol.s, rule_state, k, config, &tally);
    if (!ls.accepted) {
      result.iterations = k;
      return finish(RunStatus::StepSizeTooSmall, x, F, crit,
                    "no step accepted within max_backtracks");
    }

    if (config.record_trajectory) {
      IterationRecord rec;
      rec.k = k;
      rec.x = x;
      rec.F = F;
      rec.crit = crit;
      rec.alpha = ls.alpha;
      rec.ell = ls.ell;
      rec.nu = ls.nu;
      rec.f_evals = tally.f_evals;
      rec.jac_evals = tally.jac_evals;
      rec.armijo_set_size = ls.armijo_set_size;
      double max_gd = -std::numeric_limits<double>::infinity();
      for (const Vector& row : grads) max_gd = std::max(max_gd, dot(row, sol.s));
      rec.max_grad_dot_d = max_gd;
      rec.xi = sol.xi;
      rec.gap = sol.gap;
      rec.subproblem_tol =
          default_subproblem_tolerance(grads, config.subproblem_tol_scale);
      result.records.push_back(std::move(rec));
    }

    rule_accept(rule_state, k, ls.F_next, rule_eta(rule, k));
    x = ls.x_next;
    F = ls.F_next;
  }
}

Preset preset_solver(const std::string& name) {
  Preset preset;
  preset.name = name;
  SolverConfig config;  // rho = 1e-4, beta = 0.5, c1 = c2 = 1, eps = 1e-4, 1000 iters
  if (name == "M") {
    preset.rule = MonotoneParams{};
    config.mk = MkPolicy::constant(0);
  } else if (name == "N1") {
    preset.rule = ZhangHagerParams::defaults();
    config.mk = MkPolicy::constant(0);
  } else if (name == "N2") {
    preset.rule = MetropolisParams{};  // sigma auto, gamma = 8, log cooling
    config.mk = MkPolicy::constant(0);
  } else if (name == "Nh") {
    preset.rule = ZhangHagerParams::defaults();
    config.mk = MkPolicy::half();
  } else {
    throw UnknownProblem("unknown solver preset: " + name);
  }
  preset.config = config;
  return preset;
}

void write_run_csv(std::ostream& out, const RunResult& result, int n, int m) {
  out << "k";
  for (int j = 1; j <= n; ++j) out << ",x_" << j;
  for (int i = 1; i <= m; ++i) out << ",f_" << i;
  out << ",crit,alpha,ell";
  for (int i = 1; i <= m; ++i) out << ",nu_" << i;
  out << ",fevals,jevals\n";

  auto row = [&](int k, const Vector& x, const Vector& F, double crit, double alpha, int ell,
                 const Vector& nu, long fe, long je) {
    out << k;
    for (double v : x) out << ',' << format_double(v);
    for (double v : F) out << ',' << format_double(v);
    out << ',' << format_double(crit) << ',' << format_double(alpha) << ',' << ell;
    if (nu.empty())
      for (int i = 0; i < m; ++i) out << ",0";
    else
      for (double v : nu) out << ',' << format_double(v);
    out << ',' << fe << ',' << je << '\n';
  };

  for (const IterationRecord& rec : result.records)
    row(rec.k, rec.x, rec.F, rec.crit, rec.alpha, rec.ell, rec.nu, rec.f_evals, rec.jac_evals);
  row(result.iterations, result.final_x, result.final_F, result.final_crit, 0.0, 0, {},
      result.f_evals, result.jac_evals);
}

}  // namespace moped
