#pragma once

#include <span>
#include <string>
#include <vector>

#include "adafd/rational.hpp"

namespace adafd {

/// A finite-difference stencil for the d-th derivative:
///   f_S(t; h) = sum_j w_j f(t + h s_j) / h^d.
///
/// The weights satisfy (1/l!) sum_j w_j s_j^l = [l == d] for all l < q, and
/// q is the first order above that with a nonzero Taylor constant
/// c_q = (1/q!) sum_j w_j s_j^q. Symmetric stencils pick up an extra order
/// here, which is why q is discovered rather than prescribed.
struct Scheme {
  std::string label;
  int d = 1;
  std::vector<Rational> shifts;
  std::vector<Rational> weights;
  int q = 2;
  Rational c_q;

  // cached double views of the exact data
  std::vector<double> shifts_d;
  std::vector<double> weights_d;

  int points() const { return static_cast<int>(shifts.size()); }
  double norm1() const;    // sum |w_j|
  double norm2sq() const;  // sum w_j^2
};

/// Solves the Vandermonde system V(s)^T w = d! e_d in exact rational
/// arithmetic and scans orders m, m+1, ... for the remainder order q.
/// Throws DegreeTooLow if fewer than d+1 shifts, SingularSystem on repeats.
Scheme derive_weights(int d, const std::vector<Rational>& shifts, std::string label = "");

/// The six stencils used throughout: FD, CD, FD_3P, FD_4P, CD_4P, L2_CD.
const std::vector<Scheme>& builtin_schemes();

/// Lookup by label; throws UnknownName.
const Scheme& builtin_scheme(const std::string& label);

/// sum_j w_j values_j / h^d (compensated dot product).
double apply_scheme(const Scheme& s, std::span<const double> values, double h);

enum class BoundKind { DeterministicWorstCase, StochasticMSE, LagrangeFirstDerivative };

/// Coefficients of a two-term error envelope in h:
///   deterministic: truncation * L_q h^{q-d} + measurement * eps_f h^{-d}
///   stochastic:    truncation * L_q^2 h^{2(q-d)} + measurement * sigma_f^2 h^{-2d}
struct ErrorBound {
  double truncation_coefficient = 0;
  double measurement_coefficient = 0;
  BoundKind kind = BoundKind::DeterministicWorstCase;
};

ErrorBound deterministic_bound_coefficients(const Scheme& s);
ErrorBound stochastic_bound_coefficients(const Scheme& s);

/// |c_q| L_q h^{q-d} + ||w||_1 eps_f / h^d — the leading-order worst-case
/// envelope whose closed forms the per-scheme tables list.
double deterministic_error_bound(const Scheme& s, double L_q, double eps_f, double h);

/// Minimizer of the deterministic envelope:
///   h* = | d/(q-d) * ||w||_1 eps_f / (c_q L_q) |^{1/q}.
double optimal_interval(const Scheme& s, double L_q, double eps_f);

/// c_q^2 L_q^2 h^{2(q-d)} + ||w||_2^2 sigma_f^2 / h^{2d} and its minimizer.
double stochastic_mse_bound(const Scheme& s, double L_q, double sigma_f, double h);
double stochastic_optimal_interval(const Scheme& s, double L_q, double sigma_f);

/// Lagrange-remainder bound for first-derivative stencils where t itself is
/// an interpolation node (shifts[index_of_t] must be 0):
///   L_m h^{m-1}/m! * |prod_{j != i} s_j| + ||w||_1 eps_f / h.
/// Throws IndexOutOfRange when t is not a node of the stencil.
double lagrange_error_bound(const std::vector<Rational>& shifts, int index_of_t, double L_m,
                            double eps_f, double h);

/// Human-readable closed forms for the CLI, e.g.
///   "eps_g(h) = (1/3) L3 h^2 + 4 eps_f / h" and "h* = (6 eps_f / L3)^(1/3)".
struct BoundExpressions {
  std::string deterministic_bound;
  std::string deterministic_optimal_h;
  std::string stochastic_bound;
  std::string stochastic_optimal_h;
};
BoundExpressions closed_form_expressions(const Scheme& s);

/// Compensated (fma-based) dot product; the extra digits matter when the
/// stencil cancellation is probed near the round-off floor.
double dot2(std::span<const double> w, std::span<const double> v);

}  // namespace adafd
