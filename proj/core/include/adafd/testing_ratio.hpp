#pragma once

#include <vector>

#include "adafd/noisy.hpp"
#include "adafd/rational.hpp"
#include "adafd/scheme.hpp"

namespace adafd {

/// Normalized stencil (w~, s~) probing the q-th derivative:
///   r_S(h; f, t, eps_f) = |sum_j w~_j f(t + h s~_j)| / eps_f
/// with ||w~||_1 = 1 and sum_j w~_j s~_j^l = 0 for all l < q, so the ratio's
/// noise contribution is bounded by 1 in magnitude.
struct TestingRatio {
  Scheme base;
  std::vector<Rational> shifts;   // s~, strictly increasing
  std::vector<Rational> weights;  // w~, ||.||_1 = 1 exactly
  int q = 2;
  Rational c_r;     // (1/q!) sum w~_j s~_j^q
  Rational alpha;   // dilation used in generation
  Rational norm_A;  // l1 normalization absorbed into w~

  std::vector<double> shifts_d;
  std::vector<double> weights_d;

  int points() const { return static_cast<int>(shifts.size()); }
};

/// Builds the ratio from the two-dilation difference
///   (f_S(t; h) - alpha^{-d} f_S(t; alpha h)) h^d / (A eps_f),
/// merging coincident stencil points exactly. The d-th derivative term
/// cancels, leaving c_r = c_q (1 - alpha^{q-d}) / A at order q.
/// Throws DegenerateRatio if the merged stencil has c_r = 0.
TestingRatio generate_ratio(const Scheme& scheme, const Rational& alpha);

/// r* = d/(q-d) |c_r / c_q| ||w||_1 — the ratio value at the error-balancing
/// interval of the base scheme.
double optimal_ratio(const TestingRatio& ratio);

struct RatioBounds {
  double r_star = 0;
  double r_l = 0;
  double r_u = 0;
  double beta = 2.0;
  double margin_eta = 0.1;
};

/// r_l = max{1 + eta, r*/beta}, r_u = max{3(1 + eta), beta r*}; the defaults
/// log-center r* in [r_l, r_u] whenever the margins allow it.
RatioBounds select_bounds(double r_star, double beta = 2.0, double margin_eta = 0.1);

/// Smallest integer alpha >= 2 whose generated ratio has r* > beta.
/// Throws NoValidAlpha if none up to 16 qualifies.
int default_alpha(const Scheme& scheme, double beta = 2.0);

/// Evaluates the ratio on a noisy function, reusing cached values.
/// Throws ZeroNoiseLevel when the oracle reports eps_f = 0.
double evaluate_ratio(const TestingRatio& ratio, NoisyFunction& f, double t, double h);

}  // namespace adafd
