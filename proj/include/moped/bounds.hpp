// Copyright 2026 the moped authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <string>

#include "moped/linalg.hpp"

namespace moped {

/// Per-objective Holder smoothness data: |grad f_i(x) - grad f_i(y)| <=
/// H_i |x - y|^theta_i, plus a lower bound f_i^*.
struct SmoothnessModel {
  Vector theta;   // exponents in (0, 1]
  Vector H;       // constants > 0
  Vector f_star;  // objective lower bounds

  int m() const { return static_cast<int>(theta.size()); }
  void validate() const;
  double theta_min() const;
};

/// C_i(delta): iteration count after which the running average of [nu_k]_i
/// stays below delta.
struct RuleComplexityModel {
  std::string label;
  std::function<double(double delta, int i)> C;
};

RuleComplexityModel monotone_complexity(int m);
RuleComplexityModel zhang_hager_complexity(double delta_min, Vector f0, Vector f_star);
/// gamma > 1 uses the summable-tail closed form (sigma_i gamma / (gamma-1)) / delta;
/// gamma <= 1 falls back to the general bound with M_i = sigma_i and
/// xi_i(delta/2) = ceil((2 sigma_i / delta)^(1/gamma)).
RuleComplexityModel metropolis_complexity(Vector sigma, double gamma);

/// Step-size floor constant: min{1, min_i beta [ (1+theta_i) c1 (1-rho) /
/// (c2^(1+theta_i) H_i) ]^(1/theta_i) }.
double kappa1(const SmoothnessModel& model, double c1, double c2, double rho, double beta);

double kappa2(const SmoothnessModel& model, double c1, double c2, double rho, double beta);

/// Iteration bound min_i max{ C_i(kappa2/2 eps^(1+1/theta_min)),
/// 2 (f_i(x0) - f_i^*) / kappa2 * eps^-(1+1/theta_min) }, rounded up.
/// Requires eps in (0,1). Returned as double: counts can exceed 2^31.
double iteration_bound(const SmoothnessModel& model, const RuleComplexityModel& rule,
                       double c1, double c2, double rho, double beta, const Vector& F0,
                       double eps);

/// sigma_i / (k+1)^gamma, the proven envelope for the Metropolis [nu_k]_i
/// under log cooling.
double metropolis_decay_envelope(double sigma_i, double gamma, int k);

}  // namespace moped
