// Copyright 2026 the moped authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <deque>
#include <functional>
#include <optional>
#include <variant>

#include "moped/linalg.hpp"

namespace moped {

// Relaxation rules for the nonmonotone Armijo condition. Each rule emits a
// nonnegative per-objective slack nu_{k,l}; the line search accepts a trial
// point whose objective increase stays within it.

struct MonotoneParams {};  // nu == 0: plain Armijo on every objective

struct ZhangHagerParams {
  // Weight schedule eta_k in [0, eta_max], eta_max < 1.
  std::function<double(int)> eta;
  double eta_max = 0.85;

  static ZhangHagerParams defaults();  // eta_k = 0.85 / (k + 1)
};

struct MetropolisParams {
  // Component scales; unset means sigma_i = |f_i(x_0)| resolved at init.
  std::optional<Vector> sigma;
  double gamma = 8.0;
  // 1/tau_k; unset means the log-cooling schedule tau_k = 1/ln(k+1), for
  // which nu is computed in the algebraically equivalent power form
  // sigma_i * (k+1)^{-max(gamma, delta)}.
  std::function<double(int)> inv_tau;
};

struct GrippoParams {
  int window = 10;  // M: number of past points remembered beyond the current
};

using RuleKind = std::variant<MonotoneParams, ZhangHagerParams, MetropolisParams, GrippoParams>;

struct MonotoneState {};

struct ZhangHagerState {
  double Q = 1.0;
  Vector C;  // weighted average of past objective vectors, C >= F(x_k)
  int k = 0;
};

struct MetropolisState {
  Vector sigma;
  double gamma = 8.0;
  std::function<double(int)> inv_tau;
  int k = 0;
};

struct GrippoState {
  int window = 10;
  std::deque<Vector> history;  // F(x_{k-j}) for j = 0..min(k, M), front = oldest
};

using RuleState = std::variant<MonotoneState, ZhangHagerState, MetropolisState, GrippoState>;

RuleState rule_init(const RuleKind& kind, const Vector& F0);

/// nu_{k,l} for the trial point at backtrack index l. Only the Metropolis
/// rule reads the candidate objective vector.
Vector relaxation(const RuleState& state, int k, int ell, const Vector& F_k,
                  const Vector& F_candidate);

/// Advance the rule memory after an accepted step. eta_k is consumed by the
/// Zhang-Hager rule only.
void rule_accept(RuleState& state, int k, const Vector& F_next, double eta_k);

/// Resolves the eta_k the solver should pass to rule_accept (0 for rules
/// without a schedule).
double rule_eta(const RuleKind& kind, int k);

const char* rule_name(const RuleKind& kind);

}  // namespace moped
