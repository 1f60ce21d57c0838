// Copyright 2026 the moped authors
// SPDX-License-Identifier: Apache-2.0

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "moped/bench.hpp"
#include "moped/bounds.hpp"
#include "moped/csv.hpp"
#include "moped/errors.hpp"
#include "moped/metrics.hpp"
#include "moped/solver.hpp"
#include "moped/subproblem.hpp"
#include "moped/svg.hpp"
#include "moped/testsuite.hpp"

namespace {

using namespace moped;

int env_threads() {
  const char* value = std::getenv("MOPED_THREADS");
  if (!value) return 0;
  return std::atoi(value);
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInput("cannot open output file: " + path);
  out << contents;
}

RuleKind rule_from_flags(const std::string& rule, double eta0, double gamma,
                         const std::vector<double>& sigma, int window) {
  if (rule == "monotone") return MonotoneParams{};
  if (rule == "zh") {
    ZhangHagerParams params;
    params.eta = [eta0](int k) { return eta0 / (k + 1); };
    params.eta_max = eta0;
    return params;
  }
  if (rule == "metropolis") {
    MetropolisParams params;
    params.gamma = gamma;
    if (!sigma.empty()) params.sigma = Vector(sigma.begin(), sigma.end());
    return params;
  }
  if (rule == "grippo") {
    GrippoParams params;
    params.window = window;
    return params;
  }
  throw InvalidInput("unknown rule: " + rule + " (expected monotone|zh|metropolis|grippo)");
}

int cmd_list_problems() {
  std::cout << "name                          collection name            n rule\n";
  for (const MghInfo& info : mgh_catalog()) {
    std::printf("%-29s %-26s ", info.name.c_str(), info.display_name.c_str());
    if (info.n_multiple > 1)
      std::printf("multiples of %d\n", info.n_multiple);
    else
      std::printf(">= %d\n", info.min_n);
  }
  std::cout << "(each is paired with the Rastrigin first objective on [-a,a]^n)\n";
  return 0;
}

int cmd_run(const std::string& problem_name, int start_index, const std::string& solver,
            const std::string& rule, double eta0, double gamma,
            const std::vector<double>& sigma, int window, int mk, double eps, int max_iters,
            int n, double a, const std::string& out_path) {
  if (!(eps > 0.0)) throw InvalidInput("--eps must be positive");
  Preset preset;
  if (!rule.empty()) {
    preset.name = rule;
    preset.rule = rule_from_flags(rule, eta0, gamma, sigma, window);
    preset.config = SolverConfig{};
    preset.config.mk = MkPolicy::constant(mk);
  } else {
    preset = preset_solver(solver);
  }
  preset.config.eps = eps;
  preset.config.max_iters = max_iters;

  const MultiObjectiveProblem problem = build_benchmark(problem_name, n, a);
  const std::vector<Vector> grid = standard_start_grid(n, a);
  if (start_index < 0 || start_index >= static_cast<int>(grid.size()))
    throw InvalidInput("--start-index must be in [0, " + std::to_string(grid.size() - 1) + "]");

  const RunResult result = run(problem, grid[start_index], preset.rule, preset.config);

  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw InvalidInput("cannot open output file: " + out_path);
  write_run_csv(out, result, problem.n, problem.m);

  std::cout << "status=" << to_string(result.status) << " iters=" << result.iterations
            << " final_crit=" << format_double(result.final_crit)
            << " fevals=" << result.f_evals << " jevals=" << result.jac_evals
            << " csv=" << out_path << "\n";
  if (!result.message.empty()) std::cout << "note: " << result.message << "\n";
  return (result.status == RunStatus::Converged || result.status == RunStatus::MaxIterations)
             ? 0
             : 1;
}

int cmd_bench(BenchConfig config, const std::string& out_path) {
  if (!(config.eps > 0.0)) throw InvalidInput("--eps must be positive");
  const auto t0 = std::chrono::steady_clock::now();
  const std::vector<BenchRow> rows = bench_sweep(config);
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw InvalidInput("cannot open output file: " + out_path);
  write_bench_csv(out, rows, config);

  long converged = 0;
  double run_seconds = 0;
  for (const BenchRow& row : rows) {
    if (row.status == RunStatus::Converged) ++converged;
    run_seconds += row.wall_seconds;
  }
  std::cout << rows.size() << " runs, " << converged << " converged, wall " << elapsed
            << " s (sum of per-run times " << run_seconds << " s), csv=" << out_path << "\n";
  return 0;
}

ProfileResult profile_from_rows(const std::vector<BenchRow>& rows, const std::string& metric,
                                bool purity_mode, const std::string& pair_spec,
                                std::string* label) {
  if (purity_mode) {
    const std::size_t comma = pair_spec.find(',');
    if (comma == std::string::npos)
      throw InvalidInput("--pair expects two solver names, e.g. M,N2");
    const std::pair<std::string, std::string> pair{pair_spec.substr(0, comma),
                                                   pair_spec.substr(comma + 1)};
    *label = "purity(" + pair.first + "," + pair.second + ")";
    return performance_profile(pairwise_purity_tables(rows, pair));
  }
  BenchMetric bench_metric;
  if (metric == "iters")
    bench_metric = BenchMetric::iterations;
  else if (metric == "fevals")
    bench_metric = BenchMetric::fevals;
  else
    throw InvalidInput("--metric must be iters or fevals");
  *label = metric;
  return performance_profile(build_performance_table(rows, bench_metric));
}

int cmd_profile(const std::string& results_path, const std::string& metric, bool purity_mode,
                const std::string& pair_spec, const std::string& out_path,
                const std::string& svg_path) {
  std::ifstream in(results_path);
  if (!in) throw InvalidInput("cannot open results file: " + results_path);
  const std::vector<BenchRow> rows = read_bench_csv(in);

  std::string label;
  const ProfileResult profile = profile_from_rows(rows, metric, purity_mode, pair_spec, &label);

  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw InvalidInput("cannot open output file: " + out_path);
  write_profile_csv(out, profile, label);
  if (!svg_path.empty())
    write_file(svg_path, profile_svg(profile, "Performance profile (" + label + ")"));

  std::cout << profile.curves.size() << " curves, " << profile.excluded_problems
            << " all-failure rows excluded, csv=" << out_path;
  if (!svg_path.empty()) std::cout << " svg=" << svg_path;
  std::cout << "\n";
  return 0;
}

int cmd_gradcheck(const std::string& filter, int points, double h, double tol,
                  unsigned long long seed, bool negative_control, int n, double a) {
  struct Entry {
    std::string name;
    ScalarFunction objective;
  };
  std::vector<Entry> entries;
  if (negative_control) {
    // fixture: correct value, broken gradient; the check must fail
    ScalarFunction broken = make_rastrigin(n);
    auto good = broken.gradient;
    broken.gradient = [good](std::span<const double> x, std::span<double> g) {
      good(x, g);
      g[0] += 1.0;
    };
    entries.push_back({"corrupted_fixture", std::move(broken)});
  } else {
    if (filter.empty() || filter == "rastrigin")
      entries.push_back({"rastrigin", make_rastrigin(n)});
    for (const MghInfo& info : mgh_catalog())
      if (filter.empty() || filter == info.name)
        entries.push_back({info.name, make_mgh(info.name, n)});
    if (entries.empty()) throw UnknownProblem("no objective matches '" + filter + "'");
  }

  bool all_pass = true;
  std::printf("%-29s %-14s %s\n", "objective", "max rel error", "result");
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const std::vector<Vector> samples = sample_box(points, n, a, seed + i);
    const GradCheckReport report =
        check_gradient(entries[i].objective, entries[i].name, samples, h, tol);
    std::printf("%-29s %-14.3e %s\n", report.name.c_str(), report.max_relative_error,
                report.pass ? "pass" : "FAIL");
    all_pass = all_pass && report.pass;
  }
  return all_pass ? 0 : 1;
}

int cmd_bound(const std::vector<double>& H, const std::vector<double>& theta,
              const std::vector<double>& f_star, const std::vector<double>& f0,
              const std::string& rule, const std::vector<double>& sigma, double gamma,
              double delta_min, double c1, double c2, double rho, double beta, double eps) {
  SmoothnessModel model;
  model.H = Vector(H.begin(), H.end());
  model.theta = Vector(theta.begin(), theta.end());
  model.f_star = Vector(f_star.begin(), f_star.end());
  model.validate();
  const Vector F0(f0.begin(), f0.end());
  if (F0.size() != model.theta.size()) throw InvalidInput("--f0 size must match --theta");

  RuleComplexityModel rule_model;
  if (rule == "monotone") {
    rule_model = monotone_complexity(model.m());
  } else if (rule == "zh") {
    rule_model = zhang_hager_complexity(delta_min, F0, model.f_star);
  } else if (rule == "metropolis") {
    Vector sig(sigma.begin(), sigma.end());
    if (sig.empty())
      for (double v : F0) sig.push_back(std::abs(v));
    rule_model = metropolis_complexity(sig, gamma);
  } else {
    throw InvalidInput("--rule must be monotone, zh or metropolis");
  }

  const double k1 = kappa1(model, c1, c2, rho, beta);
  const double k2 = kappa2(model, c1, c2, rho, beta);
  const double t_min = model.theta_min();
  const double delta = 0.5 * k2 * std::pow(eps, 1.0 + 1.0 / t_min);
  const double bound = iteration_bound(model, rule_model, c1, c2, rho, beta, F0, eps);

  std::cout << "rule      = " << rule_model.label << "\n";
  std::cout << "kappa_1   = " << format_double(k1) << "\n";
  std::cout << "kappa_2   = " << format_double(k2) << "\n";
  std::cout << "theta_min = " << format_double(t_min) << "\n";
  std::cout << "delta     = " << format_double(delta) << "\n";
  for (int i = 0; i < model.m(); ++i)
    std::cout << "C_" << (i + 1) << "(delta) = " << format_double(rule_model.C(delta, i))
              << "\n";
  std::cout << "T_max     = " << format_double(bound) << "\n";
  return 0;
}

void apply_json_config(const std::string& path, BenchConfig& config, std::string& out_path,
                       const CLI::App* bench) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open config file: " + path);
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidInput(std::string("config parse error: ") + e.what());
  }
  // flags given on the command line keep precedence over file values
  auto unset = [&](const std::string& flag) { return bench->count(flag) == 0; };
  if (doc.contains("problems") && unset("--problems"))
    config.problems = doc["problems"].get<std::vector<std::string>>();
  if (doc.contains("solvers") && unset("--solvers"))
    config.solvers = doc["solvers"].get<std::vector<std::string>>();
  if (doc.contains("n") && unset("--n")) config.n = doc["n"].get<int>();
  if (doc.contains("a") && unset("--a")) config.a = doc["a"].get<double>();
  if (doc.contains("eps") && unset("--eps")) config.eps = doc["eps"].get<double>();
  if (doc.contains("max_iters") && unset("--max-iters"))
    config.max_iters = doc["max_iters"].get<int>();
  if (doc.contains("seed") && unset("--seed"))
    config.seed = doc["seed"].get<unsigned long long>();
  if (doc.contains("threads") && unset("--threads")) config.threads = doc["threads"].get<int>();
  if (doc.contains("output") && unset("--out")) out_path = doc["output"].get<std::string>();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"moped: multiobjective projected descent with nonmonotone line searches"};
  app.require_subcommand(1);

  app.add_subcommand("list-problems", "List the registered benchmark problems");

  // run
  auto* run_cmd = app.add_subcommand("run", "Run one solver on one (problem, start) pair");
  std::string run_problem, run_solver = "M", run_rule, run_out = "trajectory.csv";
  int run_start = 40, run_mk = 0, run_window = 10, run_max_iters = 1000, run_n = 4;
  double run_eps = 1e-4, run_eta0 = 0.85, run_gamma = 8.0, run_a = 5.12;
  std::vector<double> run_sigma;
  run_cmd->add_option("--problem", run_problem, "MGH pairing name")->required();
  run_cmd->add_option("--start-index", run_start, "Index into the 81-point start grid");
  run_cmd->add_option("--solver", run_solver, "Preset: M, N1, N2 or Nh");
  run_cmd->add_option("--rule", run_rule,
                      "Override preset with a rule: monotone|zh|metropolis|grippo");
  run_cmd->add_option("--eta0", run_eta0, "zh: eta_k = eta0/(k+1)");
  run_cmd->add_option("--gamma", run_gamma, "metropolis: gamma");
  run_cmd->add_option("--sigma", run_sigma, "metropolis: sigma components (default auto)")
      ->delimiter(',');
  run_cmd->add_option("--window", run_window, "grippo: window size M");
  run_cmd->add_option("--mk", run_mk, "cardinality m_k (with --rule)");
  run_cmd->add_option("--eps", run_eps, "stopping threshold on |s(x_k)|");
  run_cmd->add_option("--max-iters", run_max_iters, "iteration cap");
  run_cmd->add_option("--n", run_n, "dimension");
  run_cmd->add_option("--a", run_a, "box half-width");
  run_cmd->add_option("--out", run_out, "trajectory CSV path");

  // bench
  auto* bench_cmd = app.add_subcommand("bench", "Run the full benchmark sweep");
  BenchConfig bench_config;
  std::string bench_out = "results.csv", bench_config_path;
  bench_config.threads = env_threads();
  bench_cmd->add_option("--problems", bench_config.problems, "subset of problem names")
      ->delimiter(',');
  bench_cmd->add_option("--solvers", bench_config.solvers, "subset of presets")->delimiter(',');
  bench_cmd->add_option("--n", bench_config.n, "dimension");
  bench_cmd->add_option("--a", bench_config.a, "box half-width");
  bench_cmd->add_option("--eps", bench_config.eps, "stopping threshold");
  bench_cmd->add_option("--max-iters", bench_config.max_iters, "iteration cap");
  bench_cmd->add_option("--seed", bench_config.seed, "seed echoed into metadata");
  bench_cmd->add_option("--threads", bench_config.threads,
                        "worker threads (1 = serial reference; default MOPED_THREADS)");
  bench_cmd->add_option("--out", bench_out, "results CSV path");
  bench_cmd->add_option("--config", bench_config_path, "JSON config file");

  // profile
  auto* profile_cmd = app.add_subcommand("profile", "Performance profiles from bench results");
  std::string profile_results, profile_metric = "iters", profile_pair;
  std::string profile_out = "profile.csv", profile_svg_path;
  bool profile_purity = false;
  profile_cmd->add_option("--results", profile_results, "bench results CSV")->required();
  profile_cmd->add_option("--metric", profile_metric, "iters or fevals");
  profile_cmd->add_flag("--purity", profile_purity, "pairwise purity mode");
  profile_cmd->add_option("--pair", profile_pair, "solver pair for purity, e.g. M,N2");
  profile_cmd->add_option("--out", profile_out, "profile CSV path");
  profile_cmd->add_option("--svg", profile_svg_path, "optional SVG plot path");

  // purity
  auto* purity_cmd = app.add_subcommand("purity", "Pairwise purity profile");
  std::string purity_results, purity_pair, purity_out = "purity.csv", purity_svg_path;
  purity_cmd->add_option("--results", purity_results, "bench results CSV")->required();
  purity_cmd->add_option("--pair", purity_pair, "solver pair, e.g. M,N2")->required();
  purity_cmd->add_option("--out", purity_out, "profile CSV path");
  purity_cmd->add_option("--svg", purity_svg_path, "optional SVG plot path");

  // gradcheck
  auto* grad_cmd = app.add_subcommand("gradcheck", "Finite-difference gradient verification");
  std::string grad_filter;
  int grad_points = 100, grad_n = 4;
  double grad_h = 1e-6, grad_tol = 1e-5, grad_a = 5.12;
  unsigned long long grad_seed = 9001;
  bool grad_negative = false;
  grad_cmd->add_option("--problem", grad_filter, "check a single objective by name");
  grad_cmd->add_option("--points", grad_points, "sample points per objective");
  grad_cmd->add_option("--h", grad_h, "central-difference step");
  grad_cmd->add_option("--tol", grad_tol, "relative error tolerance");
  grad_cmd->add_option("--seed", grad_seed, "sampling seed");
  grad_cmd->add_option("--n", grad_n, "dimension");
  grad_cmd->add_option("--a", grad_a, "box half-width");
  grad_cmd->add_flag("--negative-control", grad_negative,
                     "check a deliberately corrupted gradient (must fail)");

  // bound
  auto* bound_cmd = app.add_subcommand("bound", "Complexity-bound calculator");
  std::vector<double> bound_H, bound_theta, bound_fstar, bound_f0, bound_sigma;
  std::string bound_rule = "monotone";
  double bound_gamma = 8.0, bound_delta_min = 0.15, bound_c1 = 1.0, bound_c2 = 1.0;
  double bound_rho = 1e-4, bound_beta = 0.5, bound_eps = 1e-2;
  bound_cmd->add_option("--H", bound_H, "Holder constants per objective")
      ->delimiter(',')
      ->required();
  bound_cmd->add_option("--theta", bound_theta, "Holder exponents per objective")
      ->delimiter(',')
      ->required();
  bound_cmd->add_option("--fstar", bound_fstar, "objective lower bounds")
      ->delimiter(',')
      ->required();
  bound_cmd->add_option("--f0", bound_f0, "objective values at x0")->delimiter(',')->required();
  bound_cmd->add_option("--rule", bound_rule, "monotone, zh or metropolis");
  bound_cmd->add_option("--sigma", bound_sigma, "metropolis sigma (default |f0|)")
      ->delimiter(',');
  bound_cmd->add_option("--gamma", bound_gamma, "metropolis gamma");
  bound_cmd->add_option("--delta-min", bound_delta_min, "zh: 1 - eta_max");
  bound_cmd->add_option("--c1", bound_c1, "direction constant c1");
  bound_cmd->add_option("--c2", bound_c2, "direction constant c2");
  bound_cmd->add_option("--rho", bound_rho, "Armijo parameter");
  bound_cmd->add_option("--beta", bound_beta, "backtracking factor");
  bound_cmd->add_option("--eps", bound_eps, "target criticality, in (0,1)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand("list-problems")) return cmd_list_problems();
    if (app.got_subcommand("run"))
      return cmd_run(run_problem, run_start, run_solver, run_rule, run_eta0, run_gamma,
                     run_sigma, run_window, run_mk, run_eps, run_max_iters, run_n, run_a,
                     run_out);
    if (app.got_subcommand("bench")) {
      if (!bench_config_path.empty())
        apply_json_config(bench_config_path, bench_config, bench_out, bench_cmd);
      return cmd_bench(bench_config, bench_out);
    }
    if (app.got_subcommand("profile"))
      return cmd_profile(profile_results, profile_metric, profile_purity, profile_pair,
                         profile_out, profile_svg_path);
    if (app.got_subcommand("purity"))
      return cmd_profile(purity_results, "iters", true, purity_pair, purity_out,
                         purity_svg_path);
    if (app.got_subcommand("gradcheck"))
      return cmd_gradcheck(grad_filter, grad_points, grad_h, grad_tol, grad_seed,
                           grad_negative, grad_n, grad_a);
    if (app.got_subcommand("bound"))
      return cmd_bound(bound_H, bound_theta, bound_fstar, bound_f0, bound_rule, bound_sigma,
                       bound_gamma, bound_delta_min, bound_c1, bound_c2, bound_rho, bound_beta,
                       bound_eps);
  } catch (const InvalidInput& e) {
    std::cerr << "error: InvalidInput: " << e.what() << "\n";
    return 2;
  } catch (const UnknownProblem& e) {
    std::cerr << "error: UnknownProblem: " << e.what() << "\n";
    return 2;
  } catch (const InvalidDimension& e) {
    std::cerr << "error: InvalidDimension: " << e.what() << "\n";
    return 2;
  } catch (const CsvParseError& e) {
    std::cerr << "error: CsvParseError: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
