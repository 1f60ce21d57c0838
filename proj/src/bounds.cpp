// Copyright 2026 the moped authors
// SPDX-License-Identifier: Apache-2.0

#include "moped/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "moped/errors.hpp"

namespace moped {

void SmoothnessModel::validate() const {
  if (theta.empty() || theta.size() != H.size() || theta.size() != f_star.size())
    throw InvalidInput("SmoothnessModel: theta, H, f_star must have equal nonzero size");
  for (double t : theta)
    if (!(t > 0.0 && t <= 1.0)) throw InvalidInput("SmoothnessModel: theta_i must be in (0,1]");
  for (double h : H)
    if (!(h > 0.0)) throw InvalidInput("SmoothnessModel: H_i must be positive");
}

double SmoothnessModel::theta_min() const {
  return *std::min_element(theta.begin(), theta.end());
}

RuleComplexityModel monotone_complexity(int) {
  RuleComplexityModel model;
  model.label = "monotone";
  model.C = [](double, int) { return 1.0; };
  return model;
}

RuleComplexityModel zhang_hager_complexity(double delta_min, Vector f0, Vector f_star) {
  if (!(delta_min > 0.0 && delta_min < 1.0))
    throw InvalidInput("zhang_hager_complexity: delta_min must be in (0,1)");
  RuleComplexityModel model;
  model.label = "zh";
  model.C = [delta_min, f0 = std::move(f0), f_star = std::move(f_star)](double delta, int i) {
    return ((1.0 - delta_min) / delta_min) * (f0[i] - f_star[i]) / delta;
  };
  return model;
}

RuleComplexityModel metropolis_complexity(Vector sigma, double gamma) {
  if (!(gamma > 0.0)) throw InvalidInput("metropolis_complexity: gamma must be positive");
  RuleComplexityModel model;
  model.label = "metropolis";
  if (gamma > 1.0) {
    model.C = [sigma = std::move(sigma), gamma](double delta, int i) {
      return (sigma[i] * gamma / (gamma - 1.0)) / delta;
    };
  } else {
    model.C = [sigma = std::move(sigma), gamma](double delta, int i) {
      const double M = sigma[i];
      const double xi = std::ceil(std::pow(2.0 * sigma[i] / delta, 1.0 / gamma));
      return std::max(2.0 * xi * M / delta, 1.0 + xi);
    };
  }
  return model;
}

double kappa1(const SmoothnessModel& model, double c1, double c2, double rho, double beta) {
  model.validate();
  double k1 = 1.0;
  for (int i = 0; i < model.m(); ++i) {
    const double theta = model.theta[i];
    const double inner =
        (1.0 + theta) * c1 * (1.0 - rho) / (std::pow(c2, 1.0 + theta) * model.H[i]);
    k1 = std::min(k1, beta * std::pow(inner, 1.0 / theta));
  }
  return k1;
}

double kappa2(const SmoothnessModel& model, double c1, double c2, double rho, double beta) {
  return c1 * rho * kappa1(model, c1, c2, rho, beta);
}

double iteration_bound(const SmoothnessModel& model, const RuleComplexityModel& rule,
                       double c1, double c2, double rho, double beta, const Vector& F0,
                       double eps) {
  model.validate();
  if (!(eps > 0.0 && eps < 1.0)) throw InvalidInput("iteration_bound: eps must be in (0,1)");
  if (static_cast<int>(F0.size()) != model.m())
    throw InvalidInput("iteration_bound: F0 size mismatch");
  const double k2 = kappa2(model, c1, c2, rho, beta);
  const double exponent = 1.0 + 1.0 / model.theta_min();
  const double eps_pow = std::pow(eps, exponent);
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < model.m(); ++i) {
    const double c_term = rule.C(0.5 * k2 * eps_pow, i);
    const double descent_term = 2.0 * (F0[i] - model.f_star[i]) / (k2 * eps_pow);
    best = std::min(best, std::max(c_term, descent_term));
  }
  return std::ceil(best);
}

double metropolis_decay_envelope(double sigma_i, double gamma, int k) {
  if (k < 0) throw InvalidInput("metropolis_decay_envelope: k must be >= 0");
  return sigma_i * std::pow(static_cast<double>(k) + 1.0, -gamma);
}

}  // namespace moped
