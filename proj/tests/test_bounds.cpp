// Copyright 2026 the moped authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>

#include "moped/bounds.hpp"
#include "moped/errors.hpp"

using namespace moped;

TEST_CASE("kappa1 closed forms") {
  SmoothnessModel model;
  model.theta = {1.0};
  model.H = {1.0};
  model.f_star = {0.0};
  // beta * (1+theta) c1 (1-rho) / (c2^2 H) = 0.5 * 2 * (1 - 1e-4)
  CHECK(kappa1(model, 1.0, 1.0, 1e-4, 0.5) ==
        doctest::Approx(0.9999).epsilon(1e-15));

  SmoothnessModel tiny_h = model;
  tiny_h.H = {1e-9};
  CHECK(kappa1(tiny_h, 1.0, 1.0, 1e-4, 0.9999) == 1.0);  // capped

  SmoothnessModel pair;
  pair.theta = {1.0, 1.0};
  pair.H = {1.0, 100.0};
  pair.f_star = {0.0, 0.0};
  CHECK(kappa1(pair, 1.0, 1.0, 1e-4, 0.5) ==
        doctest::Approx(0.5 * 2.0 * (1.0 - 1e-4) / 100.0).epsilon(1e-15));
}

TEST_CASE("kappa2 is c1 rho kappa1 exactly") {
  SmoothnessModel model;
  model.theta = {0.5, 1.0};
  model.H = {2.0, 7.0};
  model.f_star = {0.0, -1.0};
  const double k1 = kappa1(model, 1.5, 2.0, 0.3, 0.5);
  CHECK(kappa2(model, 1.5, 2.0, 0.3, 0.5) == 1.5 * 0.3 * k1);
}

TEST_CASE("iteration bound worked example for the monotone rule") {
  SmoothnessModel model;
  model.theta = {1.0};
  model.H = {1.0};
  model.f_star = {0.0};
  const Vector F0{0.5};
  const double bound =
      iteration_bound(model, monotone_complexity(1), 1.0, 1.0, 1e-4, 0.5, F0, 1e-2);
  const double k2 = 1e-4 * (0.5 * 2.0 * (1.0 - 1e-4));
  const double expected = std::ceil(2.0 * 0.5 / (k2 * 1e-4));
  CHECK(bound == expected);
  CHECK(bound == doctest::Approx(1.0001e8).epsilon(1e-4));
}

TEST_CASE("iteration bound validates eps in (0,1)") {
  SmoothnessModel model;
  model.theta = {1.0};
  model.H = {1.0};
  model.f_star = {0.0};
  CHECK_THROWS_AS(
      iteration_bound(model, monotone_complexity(1), 1, 1, 1e-4, 0.5, {1.0}, 1.5),
      InvalidInput);
  CHECK_THROWS_AS(
      iteration_bound(model, monotone_complexity(1), 1, 1, 1e-4, 0.5, {1.0}, 0.0),
      InvalidInput);
}

TEST_CASE("rule complexity closures") {
  const RuleComplexityModel mono = monotone_complexity(3);
  CHECK(mono.C(1e-9, 2) == 1.0);

  const RuleComplexityModel zh = zhang_hager_complexity(0.15, {2.0}, {0.5});
  // ((1 - 0.15)/0.15)(2 - 0.5)/delta
  CHECK(zh.C(0.01, 0) == doctest::Approx((0.85 / 0.15) * 1.5 / 0.01).epsilon(1e-14));

  const RuleComplexityModel met = metropolis_complexity({2.0}, 8.0);
  CHECK(met.C(0.1, 0) == doctest::Approx((2.0 * 8.0 / 7.0) / 0.1).epsilon(1e-14));

  // gamma <= 1 takes the general branch: xi = ceil((2 sigma/delta)^{1/gamma})
  const RuleComplexityModel slow = metropolis_complexity({1.0}, 0.5);
  const double xi = std::ceil(std::pow(2.0 / 0.1, 2.0));
  CHECK(slow.C(0.1, 0) == doctest::Approx(std::max(2.0 * xi * 1.0 / 0.1, 1.0 + xi)));
}

TEST_CASE("metropolis decay envelope values") {
  CHECK(metropolis_decay_envelope(1.0, 8.0, 0) == 1.0);
  CHECK(metropolis_decay_envelope(1.0, 8.0, 1) == doctest::Approx(std::pow(2.0, -8.0)));
  CHECK(metropolis_decay_envelope(3.0, 2.0, 2) == doctest::Approx(3.0 / 9.0));
}

TEST_CASE("iteration bound is nonincreasing in eps") {
  SmoothnessModel model;
  model.theta = {1.0, 0.75};
  model.H = {2.0, 3.0};
  model.f_star = {0.0, 0.0};
  const Vector F0{4.0, 7.0};
  double previous = 0.0;
  for (double eps : {0.9, 0.5, 0.1, 0.01, 0.001}) {
    const double bound =
        iteration_bound(model, monotone_complexity(2), 1, 1, 1e-4, 0.5, F0, eps);
    CHECK(bound >= previous);
    previous = bound;
  }
}

TEST_CASE("smoothness model validation") {
  SmoothnessModel bad;
  bad.theta = {1.5};
  bad.H = {1.0};
  bad.f_star = {0.0};
  CHECK_THROWS_AS(bad.validate(), InvalidInput);
  bad.theta = {1.0};
  bad.H = {0.0};
  CHECK_THROWS_AS(bad.validate(), InvalidInput);
}
