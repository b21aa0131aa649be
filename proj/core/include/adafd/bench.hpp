#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "adafd/interval_search.hpp"
#include "adafd/optimizer.hpp"
#include "adafd/problems.hpp"

namespace adafd {

struct SweepSpec {
  std::string problem = "cos";
  double t = 1.0;
  std::vector<double> eps_f_list = {1e-8, 1e-7, 1e-6, 1e-5, 1e-4, 1e-3, 1e-2, 1e-1};
  std::vector<std::string> schemes = {"FD", "CD", "FD_3P", "FD_4P", "CD_4P", "L2_CD"};
  int grid_points = 200;
  double grid_lo = 1e-10;
  double grid_hi = 1e4;
  std::uint64_t seed = 0;
  int seeds = 1;  // runs per cell, seeded seed, seed+1, ...
};

/// One row per (scheme, eps_f, seed) run; columns fixed in this order.
struct CsvRecord {
  std::string experiment;
  std::string scheme;
  std::string problem;
  double t = 0;
  double eps_f = 0;
  double h_dagger = 0;           // NaN renders as "--" (method failure)
  double h_star_reference = 0;
  double final_ratio = 0;
  int iters = 0;
  long long new_evals = 0;
  std::string status;
  double relative_error = 0;     // NaN renders as "--"
  double worst_case_relative_error_at_h_dagger = 0;
  std::uint64_t seed = 0;
};

std::string csv_header();
std::string to_csv_row(const CsvRecord& r);
std::string to_csv(const std::vector<CsvRecord>& rows);

/// delta_S(h): deterministic worst-case relative error of scheme S on the
/// noiseless phi at t — realized truncation plus maximal measurement error,
/// normalized by |phi^{(d)}(t)|. Throws ZeroDerivative.
double worst_case_relative_error(const UnivariateProblem& problem, double t, const Scheme& scheme,
                                 double eps_f, double h);

/// Golden-section minimization of delta_S over log10 h in [-10, 4] (200
/// iterations), cross-checked against the sweep-grid minimum; delta_S can be
/// multimodal, so the better of the two is returned.
double reference_optimal_h(const UnivariateProblem& problem, double t, const Scheme& scheme,
                           double eps_f);
double grid_min_worst_case(const UnivariateProblem& problem, double t, const Scheme& scheme,
                           double eps_f, const SweepSpec& spec);

/// One adaptive estimation run assembled into a CSV record: search with the
/// scheme's generated ratio and defaults, a fresh (cache-reusing) derivative
/// estimate at h-dagger for the realized relative error, plus delta_S there.
CsvRecord run_estimate_record(const UnivariateProblem& problem, double t, const Scheme& scheme,
                              double eps_f, std::uint64_t seed, const std::string& experiment,
                              int max_iter = 20);

std::vector<CsvRecord> run_table5(const SweepSpec& spec);
std::vector<CsvRecord> run_table8(std::uint64_t seed);
std::vector<CsvRecord> run_table9(std::uint64_t seed);

/// (h, delta_S) curve data for external plotting.
struct Curve {
  std::string scheme;
  double eps_f = 0;
  double h_dagger = 0;
  double delta_at_h_dagger = 0;
  std::vector<std::pair<double, double>> points;
};
std::vector<Curve> sweep_curves(const SweepSpec& spec);
std::string curves_to_csv(const std::vector<Curve>& curves);

struct LbfgsSpec {
  std::vector<std::string> problems = {"ARWHEAD", "TRIDIA", "WOODS"};
  std::vector<double> eps_f_list = {1e-3, 1e-5};
  // strategy/scheme pairs; MW applies to forward differences only
  std::vector<std::pair<Strategy, GradScheme>> methods = {
      {Strategy::Fixed, GradScheme::Forward},    {Strategy::MoreWild, GradScheme::Forward},
      {Strategy::Adaptive, GradScheme::Forward}, {Strategy::Fixed, GradScheme::Central},
      {Strategy::Adaptive, GradScheme::Central}};
  std::uint64_t seed = 1;
  int seeds = 1;
  long long eval_budget = 50000;
  int no_progress_window = 5;
};

struct LbfgsRow {
  std::string problem;
  int n = 0;
  double eps_f = 0;
  std::string strategy;
  std::string scheme;
  std::uint64_t seed = 0;
  long long evals = 0;
  double final_gap = 0;
  std::string status;
};

std::string lbfgs_csv_header();
std::string to_csv_row(const LbfgsRow& r);
std::vector<LbfgsRow> run_lbfgs_bench(const LbfgsSpec& spec);
std::string to_csv(const std::vector<LbfgsRow>& rows);

/// Optimizer trace as CSV (k, evals, true_gap, step).
std::string trace_csv(const OptRun& run);

}  // namespace adafd
