#pragma once

#include <string>
#include <vector>

#include "adafd/noisy.hpp"
#include "adafd/testing_ratio.hpp"

namespace adafd {

struct SearchConfig {
  double h0 = 0;                // initial interval
  double scale_eta = 2.0;       // expansion/shrink factor, > 1
  RatioBounds bounds;           // acceptance band [r_l, r_u]
  int max_iter = 20;
  bool geometric_midpoint = false;  // sqrt(l u) instead of (l+u)/2
};

enum class SearchStatus { Converged, NoiseDominatedWarning, MaxIterFailure };

std::string to_string(SearchStatus s);

struct SearchIterate {
  double h = 0;
  double ratio = 0;
  double lower = 0;
  double upper = 0;  // +inf until an upper bracket exists
};

struct SearchResult {
  double h_dagger = 0;
  double final_ratio = 0;
  int iterations = 0;
  long long new_evals = 0;
  long long cached_hits = 0;
  SearchStatus status = SearchStatus::Converged;
  double bracket_lower = 0;
  double bracket_upper = 0;  // +inf allowed
  std::vector<SearchIterate> trace;
};

/// Bisection on the testing ratio: brackets [l, u] start at (0, +inf);
/// ratio < r_l raises l, ratio > r_u lowers u; h expands by eta while
/// u = +inf, shrinks by eta while l = 0, and bisects otherwise. Stops when
/// the ratio lands in [r_l, r_u] or after max_iter evaluations.
///
/// A run that never sees ratio >= r_l (u still infinite at the cap) returns
/// NoiseDominatedWarning with the largest h tried: the stencil's q-th
/// derivative signal is below the noise, so a large interval is the right
/// answer. A capped run with a finite bracket returns MaxIterFailure and the
/// current bracket midpoint, which callers may still use.
///
/// Non-finite function values are treated as "h too large" (the upper
/// bracket shrinks to the offending h); three consecutive non-finite ratios
/// abort with NonFiniteFunctionValue.
SearchResult estimate_interval(NoisyFunction& f, double t, const TestingRatio& ratio,
                               const SearchConfig& config);

/// Config with the defaults the search derives from the ratio itself:
/// h0 = (d/(q-d) ||w||_1 / |c_q| eps_f)^{1/q}, eta = alpha, bounds from r*.
SearchConfig default_config(const TestingRatio& ratio, double eps_f);
double default_h0(const TestingRatio& ratio, double eps_f);

/// Forward-difference specialization: FD ratio with alpha = 4,
/// h0 = (2/sqrt(3)) sqrt(eps_f), eta = 4, bounds (1.5, 6). During monotone
/// phases each step costs exactly one new evaluation.
SearchResult forward_interval(NoisyFunction& f, double t);

/// The testing ratio backing forward_interval.
const TestingRatio& forward_ratio();

struct FiniteDifferenceEval {
  double value = 0;
  int new_evals = 0;
};

/// Applies the base scheme at interval h, drawing stencil values from the
/// oracle's cache; reports how many evaluations were actually new. After a
/// generated-ratio search converged at h, this costs zero new evaluations.
FiniteDifferenceEval finite_difference_at(NoisyFunction& f, double t, const Scheme& scheme,
                                          double h);

}  // namespace adafd
