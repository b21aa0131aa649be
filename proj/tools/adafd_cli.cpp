#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "adafd/baselines.hpp"
#include "adafd/bench.hpp"
#include "adafd/errors.hpp"
#include "adafd/interval_search.hpp"
#include "adafd/optimizer.hpp"
#include "adafd/problems.hpp"
#include "adafd/serialize.hpp"

namespace {

using namespace adafd;

std::vector<Rational> parse_shifts(const std::string& csv) {
  std::vector<Rational> out;
  std::string cur;
  for (char c : csv) {
    if (c == ',') {
      out.push_back(Rational::parse(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(Rational::parse(cur));
  return out;
}

// "NAME" or "NAME:dim"
std::pair<std::string, int> parse_problem_spec(const std::string& s) {
  const auto colon = s.find(':');
  if (colon == std::string::npos) return {s, 0};
  return {s.substr(0, colon), std::stoi(s.substr(colon + 1))};
}

void write_file(const std::string& dir, const std::string& name, const std::string& content) {
  if (dir.empty()) {
    std::cout << content;
    return;
  }
  std::filesystem::create_directories(dir);
  std::ofstream out(dir + "/" + name, std::ios::binary);
  out << content;
  std::cerr << "wrote " << dir << "/" << name << "\n";
}

NoiseKind noise_from_string(const std::string& s) {
  if (s == "uniform") return NoiseKind::Uniform;
  if (s == "none") return NoiseKind::None;
  if (s == "fresh") return NoiseKind::FreshUniform;
  throw UnknownName("unknown noise kind '" + s + "'");
}

int run(int argc, char** argv) {
  CLI::App app{"adaptive finite-difference interval estimation and noisy L-BFGS"};
  app.require_subcommand(1);

  std::uint64_t seed = 1;
  std::string out_dir;
  std::string format = "csv";
  bool plot_data = false;
  app.add_option("--seed", seed, "base RNG seed")->capture_default_str();
  app.add_option("--out", out_dir, "output directory (default: stdout)");
  app.add_option("--format", format, "csv|json")->check(CLI::IsMember({"csv", "json"}));
  app.add_flag("--plot-data", plot_data, "also emit (h, delta) curve data");

  // derive-scheme
  auto* derive = app.add_subcommand("derive-scheme", "derive stencil weights from shifts");
  int d_order = 1;
  std::string shifts_csv;
  std::string scheme_label;
  bool with_ratio = false;
  int alpha_int = 0;
  derive->add_option("--d", d_order, "derivative order")->capture_default_str();
  derive->add_option("--shifts", shifts_csv, "comma-separated rational shifts, e.g. 0,1,2");
  derive->add_option("--label", scheme_label, "label of a builtin scheme instead of shifts");
  derive->add_flag("--ratio", with_ratio, "emit the generated testing ratio too");
  derive->add_option("--alpha", alpha_int, "ratio dilation (default: smallest valid)");

  // estimate
  auto* est = app.add_subcommand("estimate", "estimate a finite-difference interval");
  std::string est_problem = "cos";
  double est_t = 1.0;
  double est_eps = 1e-5;
  std::string est_scheme = "FD";
  std::string strategy = "adaptive";
  double est_h0 = 0;
  std::string noise = "uniform";
  est->add_option("--problem", est_problem, "univariate problem name")->capture_default_str();
  est->add_option("--t", est_t, "evaluation point")->capture_default_str();
  est->add_option("--eps-f", est_eps, "noise level")->capture_default_str();
  est->add_option("--scheme", est_scheme, "scheme label")->capture_default_str();
  est->add_option("--alpha", alpha_int, "ratio dilation override");
  est->add_option("--h0", est_h0, "initial interval override");
  est->add_option("--strategy", strategy, "adaptive|mw|fixed")
      ->check(CLI::IsMember({"adaptive", "mw", "fixed"}));
  est->add_option("--noise", noise, "uniform|none|fresh");

  // minimize
  auto* min = app.add_subcommand("minimize", "run finite-difference L-BFGS");
  std::string min_problem = "ARWHEAD";
  int min_n = 0;
  double min_eps = 1e-3;
  std::string min_strategy = "adaptive";
  std::string min_scheme = "fd";
  long long budget = 50000;
  int window = 5;
  min->add_option("--problem", min_problem, "problem name or NAME:dim")->capture_default_str();
  min->add_option("--n", min_n, "dimension override");
  min->add_option("--eps-f", min_eps, "noise level")->capture_default_str();
  min->add_option("--strategy", min_strategy, "fixed|mw|adaptive|analytic");
  min->add_option("--scheme", min_scheme, "fd|cd");
  min->add_option("--budget", budget, "function evaluation budget")->capture_default_str();
  min->add_option("--window", window, "no-progress window")->capture_default_str();
  min->add_option("--noise", noise, "uniform|none|fresh");

  // bench
  auto* bench = app.add_subcommand("bench", "experiment batches");
  std::string which;
  int bench_seeds = 1;
  bench->add_option("table", which, "table5|table8|table9|lbfgs")->required();
  bench->add_option("--runs", bench_seeds, "seeds per cell")->capture_default_str();

  // problems
  auto* probs = app.add_subcommand("problems", "problem registry");
  std::string probs_action = "list";
  probs->add_option("action", probs_action, "list");

  CLI11_PARSE(app, argc, argv);

  if (derive->parsed()) {
    Scheme scheme = scheme_label.empty() ? derive_weights(d_order, parse_shifts(shifts_csv))
                                         : builtin_scheme(scheme_label);
    if (!with_ratio) {
      std::cout << scheme_json(scheme) << "\n";
    } else {
      const int a = alpha_int > 0 ? alpha_int : default_alpha(scheme);
      std::cout << ratio_json(generate_ratio(scheme, Rational(a))) << "\n";
    }
    return 0;
  }

  if (est->parsed()) {
    const UnivariateProblem problem = univariate(est_problem);
    NoisyOracle oracle = make_noisy(problem.eval, est_eps, seed, noise_from_string(noise));
    CsvRecord rec;
    if (strategy == "adaptive") {
      const Scheme& scheme = builtin_scheme(est_scheme);
      const int a = alpha_int > 0 ? alpha_int : default_alpha(scheme);
      const TestingRatio ratio = generate_ratio(scheme, Rational(a));
      SearchConfig cfg = default_config(ratio, est_eps);
      if (est_h0 > 0) cfg.h0 = est_h0;
      const SearchResult sr = estimate_interval(oracle, est_t, ratio, cfg);
      std::cout << search_result_json(sr) << "\n";
      rec = run_estimate_record(problem, est_t, scheme, est_eps, seed, "estimate");
    } else if (strategy == "mw") {
      const MWResult mw = more_wild(oracle, est_t);
      rec.experiment = "estimate_mw";
      rec.scheme = "FD";
      rec.problem = est_problem;
      rec.t = est_t;
      rec.eps_f = est_eps;
      rec.seed = seed;
      rec.iters = mw.trials;
      rec.new_evals = mw.new_evals;
      rec.status = mw.h_forward ? "MWSuccess" : "MWFailure";
      rec.h_dagger = mw.h_forward.value_or(std::numeric_limits<double>::quiet_NaN());
      rec.final_ratio = std::numeric_limits<double>::quiet_NaN();
      rec.relative_error = std::numeric_limits<double>::quiet_NaN();
      rec.worst_case_relative_error_at_h_dagger = std::numeric_limits<double>::quiet_NaN();
      rec.h_star_reference = reference_optimal_h(problem, est_t, builtin_scheme("FD"), est_eps);
    } else {  // fixed, from the analytic second/third derivative with the 0.1 floor
      const Scheme& scheme = builtin_scheme(est_scheme);
      const double L = std::fabs(problem.derivative(est_t, scheme.q));
      const double h = scheme.label == "CD" ? fixed_central_interval(L, est_eps)
                                            : fixed_forward_interval(L, est_eps);
      rec.experiment = "estimate_fixed";
      rec.scheme = scheme.label;
      rec.problem = est_problem;
      rec.t = est_t;
      rec.eps_f = est_eps;
      rec.seed = seed;
      rec.status = "Fixed";
      rec.h_dagger = h;
      rec.final_ratio = std::numeric_limits<double>::quiet_NaN();
      const double fd = finite_difference_at(oracle, est_t, scheme, h).value;
      const double dtrue = problem.derivative(est_t, scheme.d);
      rec.relative_error = dtrue != 0 ? std::fabs(fd - dtrue) / std::fabs(dtrue)
                                      : std::numeric_limits<double>::quiet_NaN();
      rec.new_evals = static_cast<long long>(oracle.eval_count());
      rec.worst_case_relative_error_at_h_dagger =
          worst_case_relative_error(problem, est_t, scheme, est_eps, h);
      rec.h_star_reference = reference_optimal_h(problem, est_t, scheme, est_eps);
    }
    std::cout << csv_header() << "\n" << to_csv_row(rec) << "\n";
    return 0;
  }

  if (min->parsed()) {
    auto [name, dim] = parse_problem_spec(min_problem);
    if (min_n > 0) dim = min_n;
    const MultivariateProblem problem = multivariate(name, dim);
    LBFGSConfig cfg;
    cfg.strategy = strategy_from_string(min_strategy);
    cfg.scheme = grad_scheme_from_string(min_scheme);
    cfg.eval_budget = budget;
    cfg.no_progress_window = window;
    const OptRun run = minimize(problem, min_eps, noise_from_string(noise), seed, cfg);
    write_file(out_dir, "trace_" + name + ".csv", trace_csv(run));
    std::cout << opt_run_json(run, name, problem.dim, min_eps, cfg, seed) << "\n";
    return 0;
  }

  if (bench->parsed()) {
    if (which == "table5") {
      SweepSpec spec;
      spec.seed = seed;
      spec.seeds = bench_seeds;
      write_file(out_dir, "table5.csv", to_csv(run_table5(spec)));
      if (plot_data) write_file(out_dir, "table5_curves.csv", curves_to_csv(sweep_curves(spec)));
    } else if (which == "table8") {
      write_file(out_dir, "table8.csv", to_csv(run_table8(seed)));
      if (plot_data) {
        SweepSpec spec;
        spec.seed = seed;
        for (const auto& [p, t] : std::vector<std::pair<std::string, double>>{
                 {"expm1_sq", -8.0}, {"exp100", 0.01}, {"quartic", 0.99999},
                 {"cubic_steep", 1e-9}}) {
          spec.problem = p;
          spec.t = t;
          spec.eps_f_list = {1e-3};
          write_file(out_dir, "table8_curves_" + p + ".csv", curves_to_csv(sweep_curves(spec)));
        }
      }
    } else if (which == "table9") {
      write_file(out_dir, "table9.csv", to_csv(run_table9(seed)));
    } else if (which == "lbfgs") {
      LbfgsSpec spec;
      spec.seed = seed;
      spec.seeds = bench_seeds;
      write_file(out_dir, "lbfgs.csv", to_csv(run_lbfgs_bench(spec)));
    } else {
      throw UnknownName("unknown bench table '" + which + "'");
    }
    return 0;
  }

  if (probs->parsed()) {
    std::printf("%-10s %5s  %-14s doc\n", "name", "dim", "phi*");
    for (const auto& name : multivariate_names()) {
      const MultivariateProblem p = multivariate(name);
      std::printf("%-10s %5d  %-14.8g %s\n", p.name.c_str(), p.dim, p.phi_star, p.doc.c_str());
    }
    std::printf("\nunivariate:\n");
    for (const auto& p : univariate_registry())
      std::printf("%-12s %s\n", p.name.c_str(), p.doc.c_str());
    return 0;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
