// Copyright 2026 the moped authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <random>

#include "moped/bounds.hpp"
#include "moped/rules.hpp"

using namespace moped;

TEST_CASE("monotone rule emits zero always") {
  RuleState state = rule_init(MonotoneParams{}, Vector{5.0, 3.0});
  const Vector nu = relaxation(state, 7, 3, Vector{1.0, 2.0}, Vector{9.0, 9.0});
  CHECK(nu == Vector{0.0, 0.0});
  rule_accept(state, 7, Vector{0.5, 0.5}, 0.0);
  CHECK(relaxation(state, 8, 0, Vector{0.5, 0.5}, Vector{0.4, 0.4}) == Vector{0.0, 0.0});
}

TEST_CASE("zhang-hager worked recursion") {
  RuleState state = rule_init(ZhangHagerParams::defaults(), Vector{5.0});
  auto& zh = std::get<ZhangHagerState>(state);
  CHECK(zh.Q == 1.0);
  CHECK(zh.C == Vector{5.0});
  CHECK(relaxation(state, 0, 0, Vector{5.0}, Vector{}) == Vector{0.0});  // nu_0 = 0

  // accept F(x_1) = 3 with eta_0 = 0.85: Q_1 = 1.85, C_1 = 7.25/1.85
  rule_accept(state, 0, Vector{3.0}, 0.85);
  CHECK(zh.Q == doctest::Approx(1.85).epsilon(1e-15));
  CHECK(zh.C[0] == doctest::Approx(7.25 / 1.85).epsilon(1e-15));

  const Vector nu1 = relaxation(state, 1, 0, Vector{3.0}, Vector{});
  CHECK(nu1[0] == doctest::Approx(7.25 / 1.85 - 3.0).epsilon(1e-12));
  // cross-check the direct form nu_1 = (1 - 1/Q_1)(F_0 + nu_0 - F_1)
  CHECK(nu1[0] == doctest::Approx((1.0 - 1.0 / 1.85) * (5.0 - 3.0)).epsilon(1e-12));
}

TEST_CASE("zhang-hager with eta = 0 degenerates to monotone") {
  ZhangHagerParams params;
  params.eta = [](int) { return 0.0; };
  params.eta_max = 0.0;
  RuleState state = rule_init(params, Vector{4.0});
  rule_accept(state, 0, Vector{2.0}, 0.0);
  auto& zh = std::get<ZhangHagerState>(state);
  CHECK(zh.Q == 1.0);
  CHECK(zh.C == Vector{2.0});
  CHECK(relaxation(state, 1, 0, Vector{2.0}, Vector{}) == Vector{0.0});
}

TEST_CASE("zhang-hager Q stays below the geometric bound") {
  ZhangHagerParams params;
  params.eta = [](int) { return 0.85; };  // constant, worst case
  params.eta_max = 0.85;
  RuleState state = rule_init(params, Vector{1.0});
  auto& zh = std::get<ZhangHagerState>(state);
  for (int k = 0; k < 2000; ++k) {
    rule_accept(state, k, Vector{1.0}, 0.85);
    CHECK(zh.Q <= 1.0 / (1.0 - 0.85) + 1e-12);
  }
}

TEST_CASE("metropolis auto sigma and the k = 0 limit") {
  RuleState state = rule_init(MetropolisParams{}, Vector{-2.0, 4.0});
  const auto& met = std::get<MetropolisState>(state);
  CHECK(met.sigma == Vector{2.0, 4.0});
  // tau_0 is the tau -> inf limit: nu = sigma regardless of the increase
  CHECK(relaxation(state, 0, 0, Vector{-2.0, 4.0}, Vector{50.0, 50.0}) == Vector{2.0, 4.0});
}

TEST_CASE("metropolis worked value at k = 1") {
  MetropolisParams params;
  params.sigma = Vector{1.0};
  params.gamma = 8.0;
  RuleState state = rule_init(params, Vector{0.0});
  rule_accept(state, 0, Vector{0.0}, 0.0);
  // increase 10 > gamma: nu = exp(-10 ln 2) = 2^-10
  const Vector nu = relaxation(state, 1, 0, Vector{0.0}, Vector{10.0});
  CHECK(nu[0] == doctest::Approx(std::pow(2.0, -10.0)).epsilon(1e-15));
  CHECK(nu[0] == doctest::Approx(9.7656e-4).epsilon(1e-4));
}

TEST_CASE("metropolis plateau and monotonicity in the increase") {
  MetropolisParams params;
  params.sigma = Vector{3.0};
  params.gamma = 8.0;
  RuleState state = rule_init(params, Vector{0.0});
  const int k = 4;
  double previous = std::numeric_limits<double>::infinity();
  const double plateau = relaxation(state, k, 0, Vector{0.0}, Vector{-5.0})[0];
  for (double increase : {-3.0, 0.0, 4.0, 7.9, 8.0, 8.1, 9.0, 20.0}) {
    const double nu = relaxation(state, k, 0, Vector{0.0}, Vector{increase})[0];
    CHECK(nu <= previous);
    if (increase <= 8.0) CHECK(nu == plateau);
    previous = nu;
  }
}

TEST_CASE("metropolis decay envelope dominates emitted values") {
  MetropolisParams params;
  params.sigma = Vector{2.5};
  params.gamma = 8.0;
  RuleState state = rule_init(params, Vector{0.0});
  std::mt19937_64 rng(5);
  for (int k = 1; k < 500; ++k) {
    const double increase = -8.0 + static_cast<double>(rng() >> 11) * 0x1.0p-53 * 30.0;
    const double nu = relaxation(state, k, 0, Vector{0.0}, Vector{increase})[0];
    CHECK(nu <= metropolis_decay_envelope(2.5, 8.0, k) + 1e-15);
  }
}

TEST_CASE("grippo window rule") {
  GrippoParams params;
  params.window = 1;
  RuleState state = rule_init(params, Vector{3.0});
  CHECK(relaxation(state, 0, 0, Vector{3.0}, Vector{}) == Vector{0.0});

  rule_accept(state, 0, Vector{2.0}, 0.0);
  rule_accept(state, 1, Vector{4.0}, 0.0);  // window keeps {2, 4}
  CHECK(relaxation(state, 2, 0, Vector{4.0}, Vector{}) == Vector{0.0});  // current is the max

  GrippoParams params2;
  params2.window = 1;
  RuleState state2 = rule_init(params2, Vector{9.0});
  rule_accept(state2, 0, Vector{4.0}, 0.0);
  rule_accept(state2, 1, Vector{2.0}, 0.0);  // window keeps {4, 2}
  CHECK(relaxation(state2, 2, 0, Vector{2.0}, Vector{}) == Vector{2.0});  // 4 - 2
}

TEST_CASE("all rules emit nonnegative relaxations on fuzzed histories") {
  std::mt19937_64 rng(99);
  auto uniform = [&rng](double lo, double hi) {
    return lo + (hi - lo) * static_cast<double>(rng() >> 11) * 0x1.0p-53;
  };
  std::vector<RuleKind> kinds{MonotoneParams{}, ZhangHagerParams::defaults(),
                              MetropolisParams{}, GrippoParams{3}};
  for (const RuleKind& kind : kinds) {
    Vector F{uniform(-5.0, 5.0), uniform(-5.0, 5.0)};
    RuleState state = rule_init(kind, F);
    for (int k = 0; k < 100; ++k) {
      const Vector candidate{uniform(-6.0, 6.0), uniform(-6.0, 6.0)};
      const Vector nu = relaxation(state, k, k % 3, F, candidate);
      for (double v : nu) CHECK(v >= 0.0);
      // accepted next point: any value not exceeding F + nu componentwise
      Vector next(2);
      for (int i = 0; i < 2; ++i) next[i] = F[i] + nu[i] - std::abs(uniform(0.0, 1.0));
      rule_accept(state, k, next, rule_eta(kind, k));
      F = next;
    }
  }
}
