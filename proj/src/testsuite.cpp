// Copyright 2026 the moped authors
// SPDX-License-Identifier: Apache-2.0

#include "moped/testsuite.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <random>

#include "moped/errors.hpp"

namespace moped {

namespace {

constexpr double kPi = std::numbers::pi;

// Residual system r: R^n -> R^p with dense Jacobian, evaluated together.
// Objectives below are f = sum_j r_j^2 with gradient 2 J^T r.
struct ResidualSystem {
  int p = 0;
  std::function<void(std::span<const double>, Vector&)> residuals;
  std::function<void(std::span<const double>, Matrix&)> jacobian;
};

ScalarFunction sum_of_squares(int n, ResidualSystem sys) {
  const int p = sys.p;
  auto residuals = sys.residuals;
  auto jacobian = sys.jacobian;
  ScalarFunction f;
  f.value = [residuals, p](std::span<const double> x) {
    Vector r(p);
    residuals(x, r);
    double total = 0.0;
    for (double v : r) total += v * v;
    return total;
  };
  f.gradient = [residuals, jacobian, p, n](std::span<const double> x, std::span<double> g) {
    Vector r(p);
    residuals(x, r);
    Matrix jac(p, Vector(n, 0.0));
    jacobian(x, jac);
    for (int j = 0; j < n; ++j) {
      double sum = 0.0;
      for (int i = 0; i < p; ++i) sum += jac[i][j] * r[i];
      g[j] = 2.0 * sum;
    }
  };
  return f;
}

ResidualSystem extended_rosenbrock(int n) {
  ResidualSystem sys;
  sys.p = n;
  sys.residuals = [n](std::span<const double> x, Vector& r) {
    for (int i = 0; i < n / 2; ++i) {
      r[2 * i] = 10.0 * (x[2 * i + 1] - x[2 * i] * x[2 * i]);
      r[2 * i + 1] = 1.0 - x[2 * i];
    }
  };
  sys.jacobian = [n](std::span<const double> x, Matrix& jac) {
    for (int i = 0; i < n / 2; ++i) {
      jac[2 * i][2 * i] = -20.0 * x[2 * i];
      jac[2 * i][2 * i + 1] = 10.0;
      jac[2 * i + 1][2 * i] = -1.0;
    }
  };
  return sys;
}

ResidualSystem extended_powell_singular(int n) {
  ResidualSystem sys;
  sys.p = n;
  const double sqrt5 = std::sqrt(5.0);
  const double sqrt10 = std::sqrt(10.0);
  sys.residuals = [n, sqrt5, sqrt10](std::span<const double> x, Vector& r) {
    for (int i = 0; i < n / 4; ++i) {
      const double a = x[4 * i], b = x[4 * i + 1], c = x[4 * i + 2], d = x[4 * i + 3];
      r[4 * i] = a + 10.0 * b;
      r[4 * i + 1] = sqrt5 * (c - d);
      r[4 * i + 2] = (b - 2.0 * c) * (b - 2.0 * c);
      r[4 * i + 3] = sqrt10 * (a - d) * (a - d);
    }
  };
  sys.jacobian = [n, sqrt5, sqrt10](std::span<const double> x, Matrix& jac) {
    for (int i = 0; i < n / 4; ++i) {
      const double a = x[4 * i], b = x[4 * i + 1], c = x[4 * i + 2], d = x[4 * i + 3];
      jac[4 * i][4 * i] = 1.0;
      jac[4 * i][4 * i + 1] = 10.0;
      jac[4 * i + 1][4 * i + 2] = sqrt5;
      jac[4 * i + 1][4 * i + 3] = -sqrt5;
      jac[4 * i + 2][4 * i + 1] = 2.0 * (b - 2.0 * c);
      jac[4 * i + 2][4 * i + 2] = -4.0 * (b - 2.0 * c);
      jac[4 * i + 3][4 * i] = 2.0 * sqrt10 * (a - d);
      jac[4 * i + 3][4 * i + 3] = -2.0 * sqrt10 * (a - d);
    }
  };
  return sys;
}

ResidualSystem penalty_i(int n) {
  ResidualSystem sys;
  sys.p = n + 1;
  const double sqrt_a = std::sqrt(1e-5);
  sys.residuals = [n, sqrt_a](std::span<const double> x, Vector& r) {
    double sum_sq = 0.0;
    for (int j = 0; j < n; ++j) {
      r[j] = sqrt_a * (x[j] - 1.0);
      sum_sq += x[j] * x[j];
    }
    r[n] = sum_sq - 0.25;
  };
  sys.jacobian = [n, sqrt_a](std::span<const double> x, Matrix& jac) {
    for (int j = 0; j < n; ++j) {
      jac[j][j] = sqrt_a;
      jac[n][j] = 2.0 * x[j];
    }
  };
  return sys;
}

ResidualSystem penalty_ii(int n) {
  ResidualSystem sys;
  sys.p = 2 * n;
  const double sqrt_a = std::sqrt(1e-5);
  sys.residuals = [n, sqrt_a](std::span<const double> x, Vector& r) {
    r[0] = x[0] - 0.2;
    for (int i = 1; i < n; ++i) {
      const double y = std::exp((i + 1) / 10.0) + std::exp(i / 10.0);
      r[i] = sqrt_a * (std::exp(x[i] / 10.0) + std::exp(x[i - 1] / 10.0) - y);
    }
    for (int i = n; i < 2 * n - 1; ++i)
      r[i] = sqrt_a * (std::exp(x[i - n + 1] / 10.0) - std::exp(-0.1));
    double weighted = 0.0;
    for (int j = 0; j < n; ++j) weighted += (n - j) * x[j] * x[j];
    r[2 * n - 1] = weighted - 1.0;
  };
  sys.jacobian = [n, sqrt_a](std::span<const double> x, Matrix& jac) {
    jac[0][0] = 1.0;
    for (int i = 1; i < n; ++i) {
      jac[i][i] = sqrt_a * std::exp(x[i] / 10.0) / 10.0;
      jac[i][i - 1] = sqrt_a * std::exp(x[i - 1] / 10.0) / 10.0;
    }
    for (int i = n; i < 2 * n - 1; ++i)
      jac[i][i - n + 1] = sqrt_a * std::exp(x[i - n + 1] / 10.0) / 10.0;
    for (int j = 0; j < n; ++j) jac[2 * n - 1][j] = 2.0 * (n - j) * x[j];
  };
  return sys;
}

ResidualSystem variably_dimensioned(int n) {
  ResidualSystem sys;
  sys.p = n + 2;
  sys.residuals = [n](std::span<const double> x, Vector& r) {
    double weighted = 0.0;
    for (int j = 0; j < n; ++j) {
      r[j] = x[j] - 1.0;
      weighted += (j + 1) * (x[j] - 1.0);
    }
    r[n] = weighted;
    r[n + 1] = weighted * weighted;
  };
  sys.jacobian = [n](std::span<const double> x, Matrix& jac) {
    double weighted = 0.0;
    for (int j = 0; j < n; ++j) weighted += (j + 1) * (x[j] - 1.0);
    for (int j = 0; j < n; ++j) {
      jac[j][j] = 1.0;
      jac[n][j] = j + 1;
      jac[n + 1][j] = 2.0 * weighted * (j + 1);
    }
  };
  return sys;
}

ResidualSystem trigonometric(int n) {
  ResidualSystem sys;
  sys.p = n;
  sys.residuals = [n](std::span<const double> x, Vector& r) {
    double cos_sum = 0.0;
    for (int j = 0; j < n; ++j) cos_sum += std::cos(x[j]);
    for (int i = 0; i < n; ++i)
      r[i] = n - cos_sum + (i + 1) * (1.0 - std::cos(x[i])) - std::sin(x[i]);
  };
  sys.jacobian = [n](std::span<const double> x, Matrix& jac) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) jac[i][j] = std::sin(x[j]);
      jac[i][i] = std::sin(x[i]) + (i + 1) * std::sin(x[i]) - std::cos(x[i]);
    }
  };
  return sys;
}

ResidualSystem discrete_boundary_value(int n) {
  ResidualSystem sys;
  sys.p = n;
  const double h = 1.0 / (n + 1);
  sys.residuals = [n, h](std::span<const double> x, Vector& r) {
    for (int i = 0; i < n; ++i) {
      const double t = (i + 1) * h;
      const double prev = (i == 0) ? 0.0 : x[i - 1];
      const double next = (i == n - 1) ? 0.0 : x[i + 1];
      const double cube = x[i] + t + 1.0;
      r[i] = 2.0 * x[i] - prev - next + h * h * cube * cube * cube / 2.0;
    }
  };
  sys.jacobian = [n, h](std::span<const double> x, Matrix& jac) {
    for (int i = 0; i < n; ++i) {
      const double t = (i + 1) * h;
      const double cube = x[i] + t + 1.0;
      jac[i][i] = 2.0 + 1.5 * h * h * cube * cube;
      if (i > 0) jac[i][i - 1] = -1.0;
      if (i < n - 1) jac[i][i + 1] = -1.0;
    }
  };
  return sys;
}

ResidualSystem discrete_integral_equation(int n) {
  ResidualSystem sys;
  sys.p = n;
  const double h = 1.0 / (n + 1);
  sys.residuals = [n, h](std::span<const double> x, Vector& r) {
    Vector cube(n);
    for (int j = 0; j < n; ++j) {
      const double t = (j + 1) * h;
      const double base = x[j] + t + 1.0;
      cube[j] = base * base * base;
    }
    for (int i = 0; i < n; ++i) {
      const double ti = (i + 1) * h;
      double low = 0.0, high = 0.0;
      for (int j = 0; j <= i; ++j) low += (j + 1) * h * cube[j];
      for (int j = i + 1; j < n; ++j) high += (1.0 - (j + 1) * h) * cube[j];
      r[i] = x[i] + h * ((1.0 - ti) * low + ti * high) / 2.0;
    }
  };
  sys.jacobian = [n, h](std::span<const double> x, Matrix& jac) {
    Vector dcube(n);
    for (int j = 0; j < n; ++j) {
      const double t = (j + 1) * h;
      const double base = x[j] + t + 1.0;
      dcube[j] = 3.0 * base * base;
    }
    for (int i = 0; i < n; ++i) {
      const double ti = (i + 1) * h;
      for (int j = 0; j < n; ++j) {
        const double tj = (j + 1) * h;
        const double weight = (j <= i) ? (1.0 - ti) * tj : ti * (1.0 - tj);
        jac[i][j] = h * weight * dcube[j] / 2.0;
      }
      jac[i][i] += 1.0;
    }
  };
  return sys;
}

ResidualSystem broyden_tridiagonal(int n) {
  ResidualSystem sys;
  sys.p = n;
  sys.residuals = [n](std::span<const double> x, Vector& r) {
    for (int i = 0; i < n; ++i) {
      const double prev = (i == 0) ? 0.0 : x[i - 1];
      const double next = (i == n - 1) ? 0.0 : x[i + 1];
      r[i] = (3.0 - 2.0 * x[i]) * x[i] - prev - 2.0 * next + 1.0;
    }
  };
  sys.jacobian = [n](std::span<const double> x, Matrix& jac) {
    for (int i = 0; i < n; ++i) {
      jac[i][i] = 3.0 - 4.0 * x[i];
      if (i > 0) jac[i][i - 1] = -1.0;
      if (i < n - 1) jac[i][i + 1] = -2.0;
    }
  };
  return sys;
}

ResidualSystem broyden_banded(int n) {
  ResidualSystem sys;
  sys.p = n;
  constexpr int kLower = 5, kUpper = 1;
  sys.residuals = [n](std::span<const double> x, Vector& r) {
    for (int i = 0; i < n; ++i) {
      double band = 0.0;
      for (int j = std::max(0, i - kLower); j <= std::min(n - 1, i + kUpper); ++j) {
        if (j == i) continue;
        band += x[j] * (1.0 + x[j]);
      }
      r[i] = x[i] * (2.0 + 5.0 * x[i] * x[i]) + 1.0 - band;
    }
  };
  sys.jacobian = [n](std::span<const double> x, Matrix& jac) {
    for (int i = 0; i < n; ++i) {
      jac[i][i] = 2.0 + 15.0 * x[i] * x[i];
      for (int j = std::max(0, i - kLower); j <= std::min(n - 1, i + kUpper); ++j) {
        if (j == i) continue;
        jac[i][j] = -(1.0 + 2.0 * x[j]);
      }
    }
  };
  return sys;
}

ResidualSystem brown_almost_linear(int n) {
  ResidualSystem sys;
  sys.p = n;
  sys.residuals = [n](std::span<const double> x, Vector& r) {
    double sum = 0.0;
    double product = 1.0;
    for (int j = 0; j < n; ++j) {
      sum += x[j];
      product *= x[j];
    }
    for (int i = 0; i < n - 1; ++i) r[i] = x[i] + sum - (n + 1.0);
    r[n - 1] = product - 1.0;
  };
  sys.jacobian = [n](std::span<const double> x, Matrix& jac) {
    for (int i = 0; i < n - 1; ++i)
      for (int j = 0; j < n; ++j) jac[i][j] = (i == j) ? 2.0 : 1.0;
    for (int j = 0; j < n; ++j) {
      double product = 1.0;
      for (int l = 0; l < n; ++l)
        if (l != j) product *= x[l];
      jac[n - 1][j] = product;
    }
  };
  return sys;
}

// Linear functions with p = n residuals (the conventional default when the
// residual count is free).
ResidualSystem linear_full_rank(int n) {
  ResidualSystem sys;
  sys.p = n;
  sys.residuals = [n](std::span<const double> x, Vector& r) {
    double sum = 0.0;
    for (int j = 0; j < n; ++j) sum += x[j];
    for (int i = 0; i < n; ++i) r[i] = x[i] - 2.0 * sum / n - 1.0;
  };
  sys.jacobian = [n](std::span<const double>, Matrix& jac) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) jac[i][j] = ((i == j) ? 1.0 : 0.0) - 2.0 / n;
  };
  return sys;
}

ResidualSystem linear_rank_one(int n) {
  ResidualSystem sys;
  sys.p = n;
  sys.residuals = [n](std::span<const double> x, Vector& r) {
    double weighted = 0.0;
    for (int j = 0; j < n; ++j) weighted += (j + 1) * x[j];
    for (int i = 0; i < n; ++i) r[i] = (i + 1) * weighted - 1.0;
  };
  sys.jacobian = [n](std::span<const double>, Matrix& jac) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) jac[i][j] = static_cast<double>((i + 1) * (j + 1));
  };
  return sys;
}

ResidualSystem linear_rank_one_zero(int n) {
  ResidualSystem sys;
  sys.p = n;
  sys.residuals = [n](std::span<const double> x, Vector& r) {
    double weighted = 0.0;
    for (int j = 1; j < n - 1; ++j) weighted += (j + 1) * x[j];
    r[0] = -1.0;
    for (int i = 1; i < n - 1; ++i) r[i] = i * weighted - 1.0;
    r[n - 1] = -1.0;
  };
  sys.jacobian = [n](std::span<const double>, Matrix& jac) {
    for (int i = 1; i < n - 1; ++i)
      for (int j = 1; j < n - 1; ++j) jac[i][j] = static_cast<double>(i * (j + 1));
  };
  return sys;
}

// Shifted Chebyshev polynomials T*_i on [0,1] and their derivatives, by the
// three-term recurrence in u = 2t - 1.
void shifted_chebyshev(double t, int order, Vector& values, Vector& derivatives) {
  const double u = 2.0 * t - 1.0;
  values[0] = 1.0;
  derivatives[0] = 0.0;
  if (order >= 1) {
    values[1] = u;
    derivatives[1] = 2.0;
  }
  for (int i = 2; i <= order; ++i) {
    values[i] = 2.0 * u * values[i - 1] - values[i - 2];
    derivatives[i] = 4.0 * values[i - 1] + 2.0 * u * derivatives[i - 1] - derivatives[i - 2];
  }
}

ResidualSystem chebyquad(int n) {
  ResidualSystem sys;
  sys.p = n;
  sys.residuals = [n](std::span<const double> x, Vector& r) {
    for (int i = 0; i < n; ++i) r[i] = 0.0;
    Vector values(n + 1), derivatives(n + 1);
    for (int j = 0; j < n; ++j) {
      shifted_chebyshev(x[j], n, values, derivatives);
      for (int i = 0; i < n; ++i) r[i] += values[i + 1] / n;
    }
    for (int i = 0; i < n; ++i) {
      const int order = i + 1;
      if (order % 2 == 0) r[i] += 1.0 / (order * order - 1.0);
      // integral of T*_i over [0,1] is 0 for odd i, -1/(i^2-1) for even i
    }
  };
  sys.jacobian = [n](std::span<const double> x, Matrix& jac) {
    Vector values(n + 1), derivatives(n + 1);
    for (int j = 0; j < n; ++j) {
      shifted_chebyshev(x[j], n, values, derivatives);
      for (int i = 0; i < n; ++i) jac[i][j] = derivatives[i + 1] / n;
    }
  };
  return sys;
}

using Builder = ResidualSystem (*)(int);

struct MghEntry {
  MghInfo info;
  Builder build;
};

const std::vector<MghEntry>& mgh_entries() {
  static const std::vector<MghEntry> entries = {
      {{"extended_rosenbrock", "Extended Rosenbrock", 2, 2}, &extended_rosenbrock},
      {{"extended_powell_singular", "Extended Powell Singular", 4, 4},
       &extended_powell_singular},
      {{"penalty_i", "Penalty I", 1, 1}, &penalty_i},
      {{"penalty_ii", "Penalty II", 1, 1}, &penalty_ii},
      {{"variably_dimensioned", "Variably Dimensioned", 1, 1}, &variably_dimensioned},
      {{"trigonometric", "Trigonometric", 1, 1}, &trigonometric},
      {{"discrete_boundary_value", "Discrete Boundary Value", 1, 1},
       &discrete_boundary_value},
      {{"discrete_integral_equation", "Discrete Integral Equation", 1, 1},
       &discrete_integral_equation},
      {{"broyden_tridiagonal", "Broyden Tridiagonal", 1, 1}, &broyden_tridiagonal},
      {{"broyden_banded", "Broyden Banded", 1, 1}, &broyden_banded},
      {{"brown_almost_linear", "Brown Almost Linear", 2, 1}, &brown_almost_linear},
      {{"linear_full_rank", "Linear", 1, 1}, &linear_full_rank},
      {{"linear_rank_one", "Linear-1", 1, 1}, &linear_rank_one},
      {{"linear_rank_one_zero", "Linear-0", 3, 1}, &linear_rank_one_zero},
      {{"chebyquad", "Chebyquad", 1, 1}, &chebyquad},
  };
  return entries;
}

}  // namespace

ScalarFunction make_rastrigin(int n) {
  if (n < 1) throw InvalidDimension("rastrigin: n must be >= 1");
  ScalarFunction f;
  f.value = [n](std::span<const double> x) {
    double total = 10.0 * n;
    for (int i = 0; i < n; ++i)
      total += x[i] * x[i] - 10.0 * std::cos(2.0 * kPi * x[i]);
    return total;
  };
  f.gradient = [n](std::span<const double> x, std::span<double> g) {
    for (int i = 0; i < n; ++i)
      g[i] = 2.0 * x[i] + 20.0 * kPi * std::sin(2.0 * kPi * x[i]);
  };
  return f;
}

const std::vector<MghInfo>& mgh_catalog() {
  static const std::vector<MghInfo> catalog = [] {
    std::vector<MghInfo> out;
    for (const MghEntry& entry : mgh_entries()) out.push_back(entry.info);
    return out;
  }();
  return catalog;
}

ScalarFunction make_mgh(const std::string& name, int n) {
  for (const MghEntry& entry : mgh_entries()) {
    if (entry.info.name != name) continue;
    if (n < entry.info.min_n || n % entry.info.n_multiple != 0)
      throw InvalidDimension("make_mgh: " + name + " does not accept n = " +
                             std::to_string(n));
    return sum_of_squares(n, entry.build(n));
  }
  throw UnknownProblem("make_mgh: unknown function '" + name + "'");
}

MultiObjectiveProblem build_benchmark(const std::string& mgh_name, int n, double a) {
  MultiObjectiveProblem problem;
  problem.name = "rastrigin+" + mgh_name;
  problem.n = n;
  problem.m = 2;
  problem.objectives.push_back(make_rastrigin(n));
  problem.objectives.push_back(make_mgh(mgh_name, n));
  problem.feasible_set = FeasibleSet::cube(n, a);
  return problem;
}

std::vector<Vector> standard_start_grid(int n, double a) {
  if (n != 4) throw InvalidInput("standard_start_grid: defined for n = 4");
  std::vector<Vector> grid;
  grid.reserve(81);
  for (int i = 1; i <= 3; ++i)
    for (int j = 1; j <= 3; ++j)
      for (int k = 1; k <= 3; ++k)
        for (int l = 1; l <= 3; ++l)
          grid.push_back({-2.0 * a + i * a, -2.0 * a + j * a, -2.0 * a + k * a,
                          -2.0 * a + l * a});
  return grid;
}

GradCheckReport check_gradient(const ScalarFunction& objective, const std::string& name,
                               const std::vector<Vector>& points, double h, double tol) {
  if (!(h > 0.0) || !(tol > 0.0)) throw InvalidInput("check_gradient: h, tol must be positive");
  GradCheckReport report;
  report.name = name;
  for (const Vector& point : points) {
    const int n = static_cast<int>(point.size());
    Vector analytic(n);
    objective.gradient(point, analytic);
    const double denom = std::max(1.0, norm(analytic));
    Vector shifted = point;
    for (int j = 0; j < n; ++j) {
      shifted[j] = point[j] + h;
      const double f_plus = objective.value(shifted);
      shifted[j] = point[j] - h;
      const double f_minus = objective.value(shifted);
      shifted[j] = point[j];
      if (!std::isfinite(f_plus) || !std::isfinite(f_minus))
        throw NonFiniteValue("check_gradient: non-finite evaluation for " + name);
      const double central = (f_plus - f_minus) / (2.0 * h);
      report.max_relative_error =
          std::max(report.max_relative_error, std::abs(analytic[j] - central) / denom);
    }
  }
  report.pass = report.max_relative_error <= tol;
  return report;
}

std::vector<Vector> sample_box(int count, int n, double a, unsigned long long seed) {
  std::mt19937_64 rng(seed);
  std::vector<Vector> points(count, Vector(n));
  for (Vector& point : points)
    for (double& coordinate : point) {
      // top 53 bits -> [0,1); avoids distribution differences across libraries
      const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
      coordinate = -a + 2.0 * a * u;
    }
  return points;
}

}  // namespace moped
