#include "adafd/bench.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <thread>

#include "adafd/baselines.hpp"
#include "adafd/errors.hpp"

namespace adafd {

namespace {

std::string fmt(double v, const char* spec = "%.6e") {
  if (std::isnan(v)) return "--";
  char buf[64];
  std::snprintf(buf, sizeof(buf), spec, v);
  return buf;
}

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Indexed parallel map with deterministic output order.
template <typename Fn>
void parallel_rows(std::size_t count, Fn&& fn) {
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(hw, count));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  std::atomic<std::size_t> next{0};
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
    });
  for (auto& th : pool) th.join();
}

}  // namespace

std::string csv_header() {
  return "experiment,scheme,problem,t,eps_f,h_dagger,h_star_reference,final_ratio,iters,"
         "new_evals,status,relative_error,worst_case_relative_error_at_h_dagger,seed";
}

std::string to_csv_row(const CsvRecord& r) {
  std::string out;
  out += r.experiment + "," + r.scheme + "," + r.problem + ",";
  out += fmt(r.t) + "," + fmt(r.eps_f) + "," + fmt(r.h_dagger) + ",";
  out += fmt(r.h_star_reference) + "," + fmt(r.final_ratio) + ",";
  out += std::to_string(r.iters) + "," + std::to_string(r.new_evals) + "," + r.status + ",";
  out += fmt(r.relative_error) + "," + fmt(r.worst_case_relative_error_at_h_dagger) + ",";
  out += std::to_string(r.seed);
  return out;
}

std::string to_csv(const std::vector<CsvRecord>& rows) {
  std::string out = csv_header() + "\n";
  for (const auto& r : rows) out += to_csv_row(r) + "\n";
  return out;
}

double worst_case_relative_error(const UnivariateProblem& problem, double t, const Scheme& scheme,
                                 double eps_f, double h) {
  const double dtrue = problem.derivative(t, scheme.d);
  if (dtrue == 0.0) throw ZeroDerivative(problem.name + " at the requested point");
  std::vector<double> values(scheme.shifts_d.size());
  for (std::size_t j = 0; j < values.size(); ++j)
    values[j] = problem.eval(t + h * scheme.shifts_d[j]);
  const double fd = dot2(scheme.weights_d, values) / std::pow(h, scheme.d);
  const double meas = scheme.norm1() * eps_f / std::pow(h, scheme.d);
  return (std::fabs(fd - dtrue) + meas) / std::fabs(dtrue);
}

double grid_min_worst_case(const UnivariateProblem& problem, double t, const Scheme& scheme,
                           double eps_f, const SweepSpec& spec) {
  const double la = std::log10(spec.grid_lo), lb = std::log10(spec.grid_hi);
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < spec.grid_points; ++i) {
    const double h = std::pow(10.0, la + (lb - la) * i / (spec.grid_points - 1));
    const double d = worst_case_relative_error(problem, t, scheme, eps_f, h);
    if (std::isfinite(d)) best = std::min(best, d);
  }
  return best;
}

double reference_optimal_h(const UnivariateProblem& problem, double t, const Scheme& scheme,
                           double eps_f) {
  auto delta_log = [&](double x) {
    return worst_case_relative_error(problem, t, scheme, eps_f, std::pow(10.0, x));
  };
  // golden section on log10 h
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = -10.0, b = 4.0;
  double c = b - gr * (b - a), d = a + gr * (b - a);
  double fc = delta_log(c), fd = delta_log(d);
  for (int it = 0; it < 200; ++it) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - gr * (b - a);
      fc = delta_log(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + gr * (b - a);
      fd = delta_log(d);
    }
  }
  const double h_golden = std::pow(10.0, 0.5 * (a + b));
  const double f_golden = worst_case_relative_error(problem, t, scheme, eps_f, h_golden);

  // grid guard against the multimodal cases
  SweepSpec spec;
  double h_grid = h_golden, f_grid = f_golden;
  const double la = std::log10(spec.grid_lo), lb = std::log10(spec.grid_hi);
  for (int i = 0; i < spec.grid_points; ++i) {
    const double h = std::pow(10.0, la + (lb - la) * i / (spec.grid_points - 1));
    const double f = worst_case_relative_error(problem, t, scheme, eps_f, h);
    if (f < f_grid) {
      f_grid = f;
      h_grid = h;
    }
  }
  return f_grid < f_golden ? h_grid : h_golden;
}

CsvRecord run_estimate_record(const UnivariateProblem& problem, double t, const Scheme& scheme,
                              double eps_f, std::uint64_t seed, const std::string& experiment,
                              int max_iter) {
  NoisyOracle oracle = make_noisy(problem.eval, eps_f, seed);
  const TestingRatio ratio = generate_ratio(scheme, Rational(default_alpha(scheme)));
  SearchConfig cfg = default_config(ratio, eps_f);
  cfg.max_iter = max_iter;

  CsvRecord rec;
  rec.experiment = experiment;
  rec.scheme = scheme.label;
  rec.problem = problem.name;
  rec.t = t;
  rec.eps_f = eps_f;
  rec.seed = seed;

  const SearchResult sr = estimate_interval(oracle, t, ratio, cfg);
  rec.h_dagger = sr.h_dagger;
  rec.final_ratio = sr.final_ratio;
  rec.iters = sr.iterations;
  rec.new_evals = sr.new_evals;
  rec.status = to_string(sr.status);

  const double estimate = finite_difference_at(oracle, t, scheme, sr.h_dagger).value;
  const double dtrue = problem.derivative(t, scheme.d);
  rec.relative_error = dtrue != 0.0 ? std::fabs(estimate - dtrue) / std::fabs(dtrue) : kNaN;
  try {
    rec.worst_case_relative_error_at_h_dagger =
        worst_case_relative_error(problem, t, scheme, eps_f, sr.h_dagger);
    rec.h_star_reference = reference_optimal_h(problem, t, scheme, eps_f);
  } catch (const ZeroDerivative&) {
    rec.worst_case_relative_error_at_h_dagger = kNaN;
    rec.h_star_reference = kNaN;
  }
  return rec;
}

std::vector<CsvRecord> run_table5(const SweepSpec& spec) {
  const UnivariateProblem problem = univariate(spec.problem);
  struct Job {
    std::string scheme;
    double eps;
    std::uint64_t seed;
  };
  std::vector<Job> jobs;
  for (const auto& label : spec.schemes)
    for (double eps : spec.eps_f_list)
      for (int s = 0; s < spec.seeds; ++s) jobs.push_back({label, eps, spec.seed + s});

  std::vector<CsvRecord> rows(jobs.size());
  parallel_rows(jobs.size(), [&](std::size_t i) {
    rows[i] = run_estimate_record(problem, spec.t, builtin_scheme(jobs[i].scheme), jobs[i].eps,
                                  jobs[i].seed, "table5");
  });
  return rows;
}

std::vector<CsvRecord> run_table8(std::uint64_t seed) {
  struct Case {
    std::string problem;
    double t;
  };
  const std::vector<Case> cases = {{"expm1_sq", -8.0},
                                   {"exp100", 0.01},
                                   {"quartic", 0.99999},
                                   {"cubic_steep", 1e-9}};
  std::vector<std::pair<Case, std::string>> jobs;
  for (const auto& c : cases)
    for (const auto& s : builtin_schemes()) jobs.emplace_back(c, s.label);

  std::vector<CsvRecord> rows(jobs.size());
  parallel_rows(jobs.size(), [&](std::size_t i) {
    const auto& [c, label] = jobs[i];
    rows[i] = run_estimate_record(univariate(c.problem), c.t, builtin_scheme(label), 1e-3, seed,
                                  "table8");
  });
  return rows;
}

std::vector<CsvRecord> run_table9(std::uint64_t seed) {
  const UnivariateProblem sinp = univariate("sin");
  const std::vector<double> eps_list = {1e-8, 1e-6, 1e-4, 1e-2};
  const std::vector<double> t_list = {1e-8, 1e-6, 1e-4, 1e-2, 0.0};
  const Scheme& fd = builtin_scheme("FD");

  struct Job {
    double eps, t;
    bool mw;
  };
  std::vector<Job> jobs;
  for (double eps : eps_list)
    for (double t : t_list) {
      jobs.push_back({eps, t, true});
      jobs.push_back({eps, t, false});
    }

  std::vector<CsvRecord> rows(jobs.size());
  parallel_rows(jobs.size(), [&](std::size_t i) {
    const Job& job = jobs[i];
    if (!job.mw) {
      rows[i] = run_estimate_record(sinp, job.t, fd, job.eps, seed, "table9_adaptive");
      return;
    }
    CsvRecord rec;
    rec.experiment = "table9_mw";
    rec.scheme = "FD";
    rec.problem = "sin";
    rec.t = job.t;
    rec.eps_f = job.eps;
    rec.seed = seed;
    NoisyOracle oracle = make_noisy(sinp.eval, job.eps, seed);
    const MWResult mw = more_wild(oracle, job.t);
    rec.iters = mw.trials;
    rec.new_evals = mw.new_evals;
    rec.h_star_reference = reference_optimal_h(sinp, job.t, fd, job.eps);
    rec.final_ratio = kNaN;
    if (mw.h_forward) {
      rec.status = "MWSuccess";
      rec.h_dagger = *mw.h_forward;
      const double est = finite_difference_at(oracle, job.t, fd, rec.h_dagger).value;
      const double dtrue = sinp.derivative(job.t, 1);
      rec.relative_error = std::fabs(est - dtrue) / std::fabs(dtrue);
      rec.worst_case_relative_error_at_h_dagger =
          worst_case_relative_error(sinp, job.t, fd, job.eps, rec.h_dagger);
    } else {
      rec.status = "MWFailure";
      rec.h_dagger = kNaN;
      rec.relative_error = kNaN;
      rec.worst_case_relative_error_at_h_dagger = kNaN;
    }
    rows[i] = rec;
  });
  return rows;
}

std::vector<Curve> sweep_curves(const SweepSpec& spec) {
  const UnivariateProblem problem = univariate(spec.problem);
  std::vector<std::pair<std::string, double>> jobs;
  for (const auto& label : spec.schemes)
    for (double eps : spec.eps_f_list) jobs.emplace_back(label, eps);

  std::vector<Curve> curves(jobs.size());
  parallel_rows(jobs.size(), [&](std::size_t i) {
    const auto& [label, eps] = jobs[i];
    const Scheme& scheme = builtin_scheme(label);
    Curve c;
    c.scheme = label;
    c.eps_f = eps;
    const double la = std::log10(spec.grid_lo), lb = std::log10(spec.grid_hi);
    for (int k = 0; k < spec.grid_points; ++k) {
      const double h = std::pow(10.0, la + (lb - la) * k / (spec.grid_points - 1));
      c.points.emplace_back(h, worst_case_relative_error(problem, spec.t, scheme, eps, h));
    }
    const CsvRecord rec =
        run_estimate_record(problem, spec.t, scheme, eps, spec.seed, "curve");
    c.h_dagger = rec.h_dagger;
    c.delta_at_h_dagger = rec.worst_case_relative_error_at_h_dagger;
    curves[i] = std::move(c);
  });
  return curves;
}

std::string curves_to_csv(const std::vector<Curve>& curves) {
  std::string out = "scheme,eps_f,h,delta,is_h_dagger\n";
  for (const auto& c : curves) {
    for (const auto& [h, d] : c.points)
      out += c.scheme + "," + fmt(c.eps_f) + "," + fmt(h) + "," + fmt(d) + ",0\n";
    out += c.scheme + "," + fmt(c.eps_f) + "," + fmt(c.h_dagger) + "," +
           fmt(c.delta_at_h_dagger) + ",1\n";
  }
  return out;
}

std::string lbfgs_csv_header() {
  return "problem,n,eps_f,strategy,scheme,seed,evals,final_gap,status";
}

std::string to_csv_row(const LbfgsRow& r) {
  std::string out;
  out += r.problem + "," + std::to_string(r.n) + "," + fmt(r.eps_f) + "," + r.strategy + "," +
         r.scheme + "," + std::to_string(r.seed) + "," + std::to_string(r.evals) + "," +
         fmt(r.final_gap) + "," + r.status;
  return out;
}

std::string to_csv(const std::vector<LbfgsRow>& rows) {
  std::string out = lbfgs_csv_header() + "\n";
  for (const auto& r : rows) out += to_csv_row(r) + "\n";
  return out;
}

std::vector<LbfgsRow> run_lbfgs_bench(const LbfgsSpec& spec) {
  struct Job {
    std::string problem;
    double eps;
    Strategy strategy;
    GradScheme scheme;
    std::uint64_t seed;
  };
  std::vector<Job> jobs;
  for (const auto& name : spec.problems)
    for (double eps : spec.eps_f_list)
      for (const auto& [strat, sch] : spec.methods)
        for (int s = 0; s < spec.seeds; ++s)
          jobs.push_back({name, eps, strat, sch, spec.seed + s});

  std::vector<LbfgsRow> rows(jobs.size());
  parallel_rows(jobs.size(), [&](std::size_t i) {
    const Job& job = jobs[i];
    const MultivariateProblem problem = multivariate(job.problem);
    LBFGSConfig cfg;
    cfg.strategy = job.strategy;
    cfg.scheme = job.scheme;
    cfg.eval_budget = spec.eval_budget;
    cfg.no_progress_window = spec.no_progress_window;
    const OptRun run = minimize(problem, job.eps, NoiseKind::Uniform, job.seed, cfg);
    LbfgsRow row;
    row.problem = job.problem;
    row.n = problem.dim;
    row.eps_f = job.eps;
    row.strategy = to_string(job.strategy);
    row.scheme = to_string(job.scheme);
    row.seed = job.seed;
    row.evals = run.evals;
    row.final_gap = run.final_true_gap;
    row.status = to_string(run.status);
    rows[i] = row;
  });
  return rows;
}

std::string trace_csv(const OptRun& run) {
  std::string out = "k,evals,true_gap,step\n";
  for (const auto& it : run.iterates)
    out += std::to_string(it.k) + "," + std::to_string(it.evals) + "," + fmt(it.true_gap) + "," +
           fmt(it.step) + "\n";
  return out;
}

}  // namespace adafd
