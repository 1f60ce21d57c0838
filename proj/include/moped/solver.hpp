// Copyright 2026 the moped authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "moped/problem.hpp"
#include "moped/rules.hpp"
#include "moped/subproblem.hpp"

namespace moped {

/// Schedule for the cardinality condition: how many objectives must satisfy
/// the plain (unrelaxed) Armijo decrease at an accepted step.
struct MkPolicy {
  enum class Kind { constant, half, all };
  Kind kind = Kind::constant;
  int value = 0;

  int resolve(int m) const;
  static MkPolicy constant(int v) { return {Kind::constant, v}; }
  static MkPolicy half() { return {Kind::half, 0}; }
  static MkPolicy all() { return {Kind::all, 0}; }
};

struct SolverConfig {
  double rho = 1e-4;  // Armijo parameter, in (0,1)
  double beta = 0.5;  // backtracking factor, in (0,1)
  double c1 = 1.0;    // direction-quality constants; d = s(x) gives c1 = c2 = 1
  double c2 = 1.0;
  MkPolicy mk = MkPolicy::constant(0);
  double eps = 1e-4;  // stop when |s(x_k)| <= eps
  int max_iters = 1000;
  int max_backtracks = 60;  // beta = 0.5 puts alpha below 2^-60, where no
                            // floating-point progress is possible
  double subproblem_tol_scale = 1e-10;
  int subproblem_max_iter = 10000;
  bool record_trajectory = true;

  void validate() const;
};

struct IterationRecord {
  int k = 0;
  Vector x;  // iterate the step departs from
  Vector F;  // F(x)
  double crit = 0;   // |s(x)|
  double alpha = 0;  // beta^ell by repeated multiplication
  int ell = 0;
  Vector nu;
  long f_evals = 0;  // cumulative, after this iteration's line search
  long jac_evals = 0;
  int armijo_set_size = 0;  // objectives meeting the plain Armijo decrease
  // Subproblem diagnostics for post-hoc condition checks.
  double max_grad_dot_d = 0;  // max_i grad f_i(x) . d
  double xi = 0;
  double gap = 0;
  double subproblem_tol = 0;
};

enum class RunStatus { Converged, MaxIterations, StepSizeTooSmall, SubproblemNotConverged };

const char* to_string(RunStatus status);
RunStatus run_status_from_string(const std::string& text);

struct RunResult {
  std::vector<IterationRecord> records;  // one per completed step
  RunStatus status = RunStatus::MaxIterations;
  Vector final_x;
  Vector final_F;
  double final_crit = 0;
  int iterations = 0;  // steps taken
  long f_evals = 0;
  long jac_evals = 0;
  double wall_seconds = 0;
  std::string message;
};

/// Step 1 of the method: s(x) over the shifted feasible set, checked against
/// the direction conditions max_i grad_i.d <= -c1|s|^2 and |d| <= c2|s|
/// within 10x the subproblem tolerance.
DirectionSolution direction(const MultiObjectiveProblem& problem, std::span<const double> x,
                            const SolverConfig& config, EvalTally* tally = nullptr);

struct LineSearchResult {
  int ell = 0;
  double alpha = 1.0;
  Vector x_next;
  Vector F_next;
  Vector nu;
  int armijo_set_size = 0;
  bool accepted = false;
};

/// Backtracking over l = 0..max_backtracks for the smallest l satisfying the
/// cardinality condition and the relaxed Armijo condition.
LineSearchResult line_search(const MultiObjectiveProblem& problem, std::span<const double> x_k,
                             const Vector& F_k, const Matrix& grads, const Vector& d,
                             const RuleState& rule_state, int k, const SolverConfig& config,
                             EvalTally* tally = nullptr);

RunResult run(const MultiObjectiveProblem& problem, Vector x0, const RuleKind& rule,
              const SolverConfig& config);

struct Preset {
  std::string name;
  RuleKind rule;
  SolverConfig config;
};

/// Benchmark solver presets M, N1, N2, Nh.
Preset preset_solver(const std::string& name);

/// Trajectory CSV: k,x_1..x_n,f_1..f_m,crit,alpha,ell,nu_1..nu_m,fevals,jevals.
/// A terminal row (alpha = 0, ell = 0, nu = 0) carries the final point.
void write_run_csv(std::ostream& out, const RunResult& result, int n, int m);

}  // namespace moped
