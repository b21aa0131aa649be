#include "adafd/scheme.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <sstream>

#include "adafd/errors.hpp"

namespace adafd {

double dot2(std::span<const double> w, std::span<const double> v) {
  double p = 0.0, s = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const double prod = w[i] * v[i];
    const double perr = std::fma(w[i], v[i], -prod);
    const double x = p + prod;
    const double z = x - p;
    const double serr = (p - (x - z)) + (prod - z);
    p = x;
    s += serr + perr;
  }
  return p + s;
}

double Scheme::norm1() const {
  Rational n(0);
  for (const auto& w : weights) n = n + w.abs();
  return n.to_double();
}

double Scheme::norm2sq() const {
  Rational n(0);
  for (const auto& w : weights) n = n + w * w;
  return n.to_double();
}

namespace {

void cache_doubles(Scheme& s) {
  s.shifts_d.clear();
  s.weights_d.clear();
  for (const auto& v : s.shifts) s.shifts_d.push_back(v.to_double());
  for (const auto& v : s.weights) s.weights_d.push_back(v.to_double());
}

// Gaussian elimination with partial (max-magnitude) pivoting, exact.
std::vector<Rational> solve_rational(std::vector<std::vector<Rational>> A,
                                     std::vector<Rational> b) {
  const int n = static_cast<int>(b.size());
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r)
      if (A[r][col].abs() > A[piv][col].abs()) piv = r;
    if (A[piv][col].is_zero()) throw SingularSystem("repeated shifts");
    std::swap(A[piv], A[col]);
    std::swap(b[piv], b[col]);
    for (int r = col + 1; r < n; ++r) {
      if (A[r][col].is_zero()) continue;
      Rational f = A[r][col] / A[col][col];
      for (int c = col; c < n; ++c) A[r][c] = A[r][c] - f * A[col][c];
      b[r] = b[r] - f * b[col];
    }
  }
  std::vector<Rational> x(n, Rational(0));
  for (int r = n - 1; r >= 0; --r) {
    Rational acc = b[r];
    for (int c = r + 1; c < n; ++c) acc = acc - A[r][c] * x[c];
    x[r] = acc / A[r][r];
  }
  return x;
}

Rational taylor_constant(const Scheme& s, int order) {
  Rational acc(0);
  for (int j = 0; j < s.points(); ++j) acc = acc + s.weights[j] * s.shifts[j].pow(order);
  return acc / Rational(factorial_ll(order));
}

}  // namespace

Scheme derive_weights(int d, const std::vector<Rational>& shifts_in, std::string label) {
  const int m = static_cast<int>(shifts_in.size());
  if (d < 1) throw DegreeTooLow("derivative order must be positive");
  if (m < d + 1) throw DegreeTooLow("need at least d+1 shifts");

  std::vector<Rational> shifts = shifts_in;
  std::sort(shifts.begin(), shifts.end());
  for (int j = 1; j < m; ++j)
    if (shifts[j] == shifts[j - 1]) throw SingularSystem("repeated shifts");

  // Exactness through order m-1: (1/l!) sum w_j s_j^l = [l == d].
  std::vector<std::vector<Rational>> A(m, std::vector<Rational>(m, Rational(0)));
  std::vector<Rational> b(m, Rational(0));
  for (int l = 0; l < m; ++l) {
    for (int j = 0; j < m; ++j) A[l][j] = shifts[j].pow(l);
    b[l] = (l == d) ? Rational(factorial_ll(d)) : Rational(0);
  }

  Scheme s;
  s.label = std::move(label);
  s.d = d;
  s.shifts = shifts;
  s.weights = solve_rational(std::move(A), std::move(b));

  // First nonzero Taylor constant above the enforced range gives q.
  s.q = 0;
  for (int order = m; order <= m + 4; ++order) {
    Rational c = taylor_constant(s, order);
    if (!c.is_zero()) {
      s.q = order;
      s.c_q = c;
      break;
    }
  }
  if (s.q == 0) throw DegenerateRatio("no nonzero remainder constant up to order m+4");

  cache_doubles(s);
  return s;
}

const std::vector<Scheme>& builtin_schemes() {
  static const std::vector<Scheme> schemes = [] {
    std::vector<Scheme> v;
    auto R = [](long long n, long long d = 1) { return Rational(n, d); };
    v.push_back(derive_weights(1, {R(0), R(1)}, "FD"));
    v.push_back(derive_weights(1, {R(-1), R(1)}, "CD"));
    v.push_back(derive_weights(1, {R(0), R(1), R(2)}, "FD_3P"));
    v.push_back(derive_weights(1, {R(0), R(1), R(2), R(3)}, "FD_4P"));
    v.push_back(derive_weights(1, {R(-2), R(-1), R(1), R(2)}, "CD_4P"));
    v.push_back(derive_weights(2, {R(-1), R(0), R(1)}, "L2_CD"));
    return v;
  }();
  return schemes;
}

const Scheme& builtin_scheme(const std::string& label) {
  for (const auto& s : builtin_schemes())
    if (s.label == label) return s;
  throw UnknownName("no builtin scheme named '" + label + "'");
}

double apply_scheme(const Scheme& s, std::span<const double> values, double h) {
  if (values.size() != s.shifts.size())
    throw IndexOutOfRange("value count does not match stencil size");
  return dot2(s.weights_d, values) / std::pow(h, s.d);
}

ErrorBound deterministic_bound_coefficients(const Scheme& s) {
  return ErrorBound{s.c_q.abs().to_double(), s.norm1(), BoundKind::DeterministicWorstCase};
}

ErrorBound stochastic_bound_coefficients(const Scheme& s) {
  const double cq = s.c_q.to_double();
  return ErrorBound{cq * cq, s.norm2sq(), BoundKind::StochasticMSE};
}

double deterministic_error_bound(const Scheme& s, double L_q, double eps_f, double h) {
  const auto eb = deterministic_bound_coefficients(s);
  return eb.truncation_coefficient * L_q * std::pow(h, s.q - s.d) +
         eb.measurement_coefficient * eps_f / std::pow(h, s.d);
}

double optimal_interval(const Scheme& s, double L_q, double eps_f) {
  const double ratio =
      static_cast<double>(s.d) / (s.q - s.d) * s.norm1() * eps_f / (s.c_q.abs().to_double() * L_q);
  return std::pow(std::fabs(ratio), 1.0 / s.q);
}

double stochastic_mse_bound(const Scheme& s, double L_q, double sigma_f, double h) {
  const auto eb = stochastic_bound_coefficients(s);
  return eb.truncation_coefficient * L_q * L_q * std::pow(h, 2 * (s.q - s.d)) +
         eb.measurement_coefficient * sigma_f * sigma_f / std::pow(h, 2 * s.d);
}

double stochastic_optimal_interval(const Scheme& s, double L_q, double sigma_f) {
  const auto eb = stochastic_bound_coefficients(s);
  const double ratio = static_cast<double>(s.d) / (s.q - s.d) * eb.measurement_coefficient /
                       eb.truncation_coefficient;
  return std::pow(ratio, 1.0 / (2 * s.q)) * std::pow(sigma_f / L_q, 1.0 / s.q);
}

double lagrange_error_bound(const std::vector<Rational>& shifts, int index_of_t, double L_m,
                            double eps_f, double h) {
  const int m = static_cast<int>(shifts.size());
  if (index_of_t < 0 || index_of_t >= m)
    throw IndexOutOfRange("interpolation node index out of range");
  if (!shifts[index_of_t].is_zero())
    throw IndexOutOfRange("t is not an interpolation node of this stencil");

  Rational prod(1);
  for (int j = 0; j < m; ++j)
    if (j != index_of_t) prod = prod * shifts[j];
  const double trunc =
      L_m * std::pow(h, m - 1) / static_cast<double>(factorial_ll(m)) * prod.abs().to_double();

  const Scheme s = derive_weights(1, shifts);
  return trunc + s.norm1() * eps_f / h;
}

namespace {

std::string rat_str(const Rational& r) {
  return r.den() == 1 ? r.str() : "(" + r.str() + ")";
}

std::string pow_str(const std::string& base, int e) {
  if (e == 1) return base;
  return base + "^" + std::to_string(e);
}

}  // namespace

BoundExpressions closed_form_expressions(const Scheme& s) {
  std::ostringstream det, deth, sto, stoh;
  const int q = s.q, d = s.d;
  Rational n1(0), n2(0);
  for (const auto& w : s.weights) {
    n1 = n1 + w.abs();
    n2 = n2 + w * w;
  }

  det << "eps_g(h) = " << rat_str(s.c_q.abs()) << " L" << q << " " << pow_str("h", q - d) << " + "
      << rat_str(n1) << " eps_f / " << pow_str("h", d);
  Rational hopt = Rational(d, q - d) * n1 / s.c_q.abs();
  deth << "h* = (" << rat_str(hopt) << " eps_f / L" << q << ")^(1/" << q << ")";

  sto << "sigma_g^2(h) = " << rat_str(s.c_q * s.c_q) << " L" << q << "^2 "
      << pow_str("h", 2 * (q - d)) << " + " << rat_str(n2) << " sigma_f^2 / "
      << pow_str("h", 2 * d);
  Rational sopt = Rational(d, q - d) * n2 / (s.c_q * s.c_q);
  stoh << "h* = (" << rat_str(sopt) << ")^(1/" << 2 * q << ") (sigma_f / L" << q << ")^(1/" << q
       << ")";

  return BoundExpressions{det.str(), deth.str(), sto.str(), stoh.str()};
}

}  // namespace adafd
