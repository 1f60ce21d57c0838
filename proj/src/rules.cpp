// Copyright 2026 the moped authors
// SPDX-License-Identifier: Apache-2.0

#include "moped/rules.hpp"

#include <algorithm>
#include <cmath>

#include "moped/errors.hpp"

namespace moped {

ZhangHagerParams ZhangHagerParams::defaults() {
  ZhangHagerParams p;
  p.eta = [](int k) { return 0.85 / (k + 1); };
  p.eta_max = 0.85;
  return p;
}

RuleState rule_init(const RuleKind& kind, const Vector& F0) {
  if (!all_finite(F0)) throw InvalidInput("rule_init: F0 must be finite");
  return std::visit(
      [&](const auto& params) -> RuleState {
        using T = std::decay_t<decltype(params)>;
        if constexpr (std::is_same_v<T, MonotoneParams>) {
          return MonotoneState{};
        } else if constexpr (std::is_same_v<T, ZhangHagerParams>) {
          ZhangHagerState s;
          s.Q = 1.0;
          s.C = F0;  // nu_0 = C - F0 = 0
          s.k = 0;
          return s;
        } else if constexpr (std::is_same_v<T, MetropolisParams>) {
          MetropolisState s;
          if (params.sigma) {
            s.sigma = *params.sigma;
          } else {
            s.sigma.resize(F0.size());
            for (std::size_t i = 0; i < F0.size(); ++i) s.sigma[i] = std::abs(F0[i]);
          }
          for (double v : s.sigma)
            if (!(v >= 0.0)) throw InvalidInput("metropolis: sigma must be nonnegative");
          if (!(params.gamma > 0.0)) throw InvalidInput("metropolis: gamma must be positive");
          s.gamma = params.gamma;
          s.inv_tau = params.inv_tau;
          s.k = 0;
          return s;
        } else {
          static_assert(std::is_same_v<T, GrippoParams>);
          if (params.window < 0) throw InvalidInput("grippo: window must be >= 0");
          GrippoState s;
          s.window = params.window;
          s.history.push_back(F0);
          return s;
        }
      },
      kind);
}

Vector relaxation(const RuleState& state, int k, int ell, const Vector& F_k,
                  const Vector& F_candidate) {
  (void)ell;  // nu is ell-independent for every rule except Metropolis,
              // which depends on ell only through F_candidate
  const std::size_t m = F_k.size();
  return std::visit(
      [&](const auto& s) -> Vector {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, MonotoneState>) {
          return Vector(m, 0.0);
        } else if constexpr (std::is_same_v<T, ZhangHagerState>) {
          Vector nu(m);
          // C >= F_k holds in exact arithmetic; clamp shields against the
          // averaged C rounding an ulp below F_k.
          for (std::size_t i = 0; i < m; ++i) nu[i] = std::max(s.C[i] - F_k[i], 0.0);
          return nu;
        } else if constexpr (std::is_same_v<T, MetropolisState>) {
          Vector nu(m);
          for (std::size_t i = 0; i < m; ++i) {
            const double increase = F_candidate[i] - F_k[i];
            const double exponent_arg = std::max(s.gamma, increase);
            if (!s.inv_tau) {
              // tau_k = 1/ln(k+1): sigma * exp(-arg*ln(k+1)) = sigma * (k+1)^{-arg}.
              // At k = 0 the base is 1, giving the tau -> inf limit nu = sigma.
              nu[i] = s.sigma[i] * std::pow(static_cast<double>(k) + 1.0, -exponent_arg);
            } else {
              const double it = s.inv_tau(k);
              nu[i] = s.sigma[i] * std::exp(-exponent_arg * it);
            }
          }
          return nu;
        } else {
          static_assert(std::is_same_v<T, GrippoState>);
          Vector nu(m, 0.0);
          for (std::size_t i = 0; i < m; ++i) {
            double running_max = F_k[i];
            for (const Vector& past : s.history) running_max = std::max(running_max, past[i]);
            nu[i] = running_max - F_k[i];
          }
          return nu;
        }
      },
      state);
}

void rule_accept(RuleState& state, int k, const Vector& F_next, double eta_k) {
  std::visit(
      [&](auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, ZhangHagerState>) {
          const double Q_old = s.Q;
          s.Q = eta_k * Q_old + 1.0;
          for (std::size_t i = 0; i < s.C.size(); ++i)
            s.C[i] = (eta_k * Q_old * s.C[i] + F_next[i]) / s.Q;
          s.k = k + 1;
        } else if constexpr (std::is_same_v<T, MetropolisState>) {
          s.k = k + 1;
        } else if constexpr (std::is_same_v<T, GrippoState>) {
          s.history.push_back(F_next);
          while (static_cast<int>(s.history.size()) > s.window + 1) s.history.pop_front();
        }
      },
      state);
}

double rule_eta(const RuleKind& kind, int k) {
  if (const auto* zh = std::get_if<ZhangHagerParams>(&kind))
    return zh->eta ? zh->eta(k) : 0.85 / (k + 1);
  return 0.0;
}

const char* rule_name(const RuleKind& kind) {
  switch (kind.index()) {
    case 0: return "monotone";
    case 1: return "zh";
    case 2: return "metropolis";
    default: return "grippo";
  }
}

}  // namespace moped
