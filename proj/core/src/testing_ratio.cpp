#include "adafd/testing_ratio.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "adafd/errors.hpp"

namespace adafd {

TestingRatio generate_ratio(const Scheme& scheme, const Rational& alpha) {
  if (alpha <= Rational(0) || alpha == Rational(1))
    throw DegenerateRatio("alpha must be positive and != 1");

  // Stencil of f_S(t;h) h^d - alpha^{-d} f_S(t;alpha h) h^d: weights w_j at
  // s_j and -alpha^{-d} w_j at alpha s_j, merged on exact shift equality.
  std::map<Rational, Rational> merged;
  const Rational neg_scale = -(Rational(1) / alpha.pow(scheme.d));
  for (int j = 0; j < scheme.points(); ++j) {
    merged[scheme.shifts[j]] = merged.count(scheme.shifts[j])
                                   ? merged[scheme.shifts[j]] + scheme.weights[j]
                                   : scheme.weights[j];
    const Rational as = alpha * scheme.shifts[j];
    const Rational aw = neg_scale * scheme.weights[j];
    merged[as] = merged.count(as) ? merged[as] + aw : aw;
  }

  TestingRatio r;
  r.base = scheme;
  r.alpha = alpha;
  r.q = scheme.q;

  Rational norm(0);
  for (const auto& [s, w] : merged)
    if (!w.is_zero()) norm = norm + w.abs();
  if (norm.is_zero()) throw DegenerateRatio("stencil cancelled completely");
  r.norm_A = norm;

  for (const auto& [s, w] : merged) {
    if (w.is_zero()) continue;  // cancelled point, never evaluated
    r.shifts.push_back(s);
    r.weights.push_back(w / norm);
  }

  // Deterministic serialization: first nonzero weight positive. The ratio
  // takes an absolute value, so this is cosmetic.
  if (!r.weights.empty() && r.weights.front() < Rational(0))
    for (auto& w : r.weights) w = -w;

  // c_r from the final stencil; equals +-c_q (1 - alpha^{q-d}) / A.
  Rational cr(0);
  for (std::size_t j = 0; j < r.shifts.size(); ++j)
    cr = cr + r.weights[j] * r.shifts[j].pow(r.q);
  r.c_r = cr / Rational(factorial_ll(r.q));
  if (r.c_r.is_zero()) throw DegenerateRatio("c_r vanished after merging");

  for (const auto& v : r.shifts) r.shifts_d.push_back(v.to_double());
  for (const auto& v : r.weights) r.weights_d.push_back(v.to_double());
  return r;
}

double optimal_ratio(const TestingRatio& ratio) {
  const auto& s = ratio.base;
  return static_cast<double>(s.d) / (s.q - s.d) *
         (ratio.c_r / s.c_q).abs().to_double() * s.norm1();
}

RatioBounds select_bounds(double r_star, double beta, double margin_eta) {
  RatioBounds b;
  b.r_star = r_star;
  b.beta = beta;
  b.margin_eta = margin_eta;
  b.r_l = std::max(1.0 + margin_eta, r_star / beta);
  b.r_u = std::max(3.0 * (1.0 + margin_eta), beta * r_star);
  return b;
}

int default_alpha(const Scheme& scheme, double beta) {
  for (int a = 2; a <= 16; ++a) {
    try {
      if (optimal_ratio(generate_ratio(scheme, Rational(a))) > beta) return a;
    } catch (const DegenerateRatio&) {
    }
  }
  throw NoValidAlpha("no integer alpha <= 16 gives r* > beta");
}

double evaluate_ratio(const TestingRatio& ratio, NoisyFunction& f, double t, double h) {
  if (f.noise_level() <= 0.0) throw ZeroNoiseLevel("testing ratio needs eps_f > 0");
  std::vector<double> values(ratio.shifts_d.size());
  for (std::size_t j = 0; j < values.size(); ++j)
    values[j] = f.value(t + h * ratio.shifts_d[j]);
  return std::fabs(dot2(ratio.weights_d, values)) / f.noise_level();
}

}  // namespace adafd
