#include "adafd/interval_search.hpp"

#include <cmath>
#include <limits>

#include "adafd/errors.hpp"

namespace adafd {

std::string to_string(SearchStatus s) {
  switch (s) {
    case SearchStatus::Converged: return "Converged";
    case SearchStatus::NoiseDominatedWarning: return "NoiseDominatedWarning";
    case SearchStatus::MaxIterFailure: return "MaxIterFailure";
  }
  return "Unknown";
}

SearchResult estimate_interval(NoisyFunction& f, double t, const TestingRatio& ratio,
                               const SearchConfig& config) {
  if (f.noise_level() <= 0.0) throw ZeroNoiseLevel("interval search needs eps_f > 0");
  if (!(config.h0 > 0.0)) throw Error("SearchConfig: h0 must be positive");
  if (!(config.scale_eta > 1.0)) throw Error("SearchConfig: scale factor must exceed 1");
  if (!(config.bounds.r_l > 1.0) || !(config.bounds.r_u > config.bounds.r_l + 2.0))
    throw Error("SearchConfig: bounds must satisfy 1 < r_l < r_u - 2");

  const double inf = std::numeric_limits<double>::infinity();
  const std::uint64_t evals0 = f.eval_count();
  const std::uint64_t calls0 = f.call_count();

  SearchResult res;
  double h = config.h0;
  double l = 0.0, u = inf;
  double last_h = h, last_ratio = 0.0;
  int nonfinite_run = 0;
  bool converged = false;

  for (int k = 0; k < config.max_iter; ++k) {
    const double r = evaluate_ratio(ratio, f, t, h);
    ++res.iterations;
    last_h = h;
    last_ratio = r;
    res.trace.push_back(SearchIterate{h, r, l, u});

    if (!std::isfinite(r)) {
      // Overflowing values mean h is too large; shrink the upper bracket.
      if (++nonfinite_run >= 3)
        throw NonFiniteFunctionValue("three consecutive non-finite testing ratios");
      u = h;
    } else {
      nonfinite_run = 0;
      if (r < config.bounds.r_l) {
        l = h;
      } else if (r > config.bounds.r_u) {
        u = h;
      } else {
        converged = true;
        break;
      }
    }

    if (u == inf)
      h = config.scale_eta * h;
    else if (l == 0.0)
      h = h / config.scale_eta;
    else
      h = config.geometric_midpoint ? std::sqrt(l * u) : (l + u) / 2.0;
  }

  res.new_evals = static_cast<long long>(f.eval_count() - evals0);
  res.cached_hits = static_cast<long long>(f.call_count() - calls0) - res.new_evals;
  res.bracket_lower = l;
  res.bracket_upper = u;

  if (converged) {
    res.status = SearchStatus::Converged;
    res.h_dagger = last_h;
    res.final_ratio = last_ratio;
  } else if (u == inf) {
    res.status = SearchStatus::NoiseDominatedWarning;
    res.h_dagger = last_h;  // largest interval tried
    res.final_ratio = last_ratio;
  } else {
    res.status = SearchStatus::MaxIterFailure;
    res.h_dagger = config.geometric_midpoint && l > 0.0 ? std::sqrt(l * u) : (l + u) / 2.0;
    res.final_ratio = last_ratio;
  }
  return res;
}

double default_h0(const TestingRatio& ratio, double eps_f) {
  const auto& s = ratio.base;
  const double arg =
      static_cast<double>(s.d) / (s.q - s.d) * s.norm1() / s.c_q.abs().to_double() * eps_f;
  return std::pow(arg, 1.0 / s.q);
}

SearchConfig default_config(const TestingRatio& ratio, double eps_f) {
  SearchConfig cfg;
  cfg.h0 = default_h0(ratio, eps_f);
  cfg.scale_eta = ratio.alpha.to_double();
  cfg.bounds = select_bounds(optimal_ratio(ratio));
  return cfg;
}

const TestingRatio& forward_ratio() {
  static const TestingRatio r = generate_ratio(builtin_scheme("FD"), Rational(4));
  return r;
}

SearchResult forward_interval(NoisyFunction& f, double t) {
  SearchConfig cfg;
  cfg.h0 = 2.0 / std::sqrt(3.0) * std::sqrt(f.noise_level());
  cfg.scale_eta = 4.0;
  cfg.bounds = select_bounds(3.0);  // (1.5, 6)
  return estimate_interval(f, t, forward_ratio(), cfg);
}

FiniteDifferenceEval finite_difference_at(NoisyFunction& f, double t, const Scheme& scheme,
                                          double h) {
  const std::uint64_t evals0 = f.eval_count();
  std::vector<double> values(scheme.shifts_d.size());
  for (std::size_t j = 0; j < values.size(); ++j)
    values[j] = f.value(t + h * scheme.shifts_d[j]);
  FiniteDifferenceEval out;
  out.value = dot2(scheme.weights_d, values) / std::pow(h, scheme.d);
  if (!std::isfinite(out.value))
    throw NonFiniteFunctionValue("finite-difference stencil returned non-finite value");
  out.new_evals = static_cast<int>(f.eval_count() - evals0);
  return out;
}

}  // namespace adafd
