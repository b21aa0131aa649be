#include "adafd/noisy.hpp"

#include <bit>
#include <cmath>

#include "adafd/errors.hpp"

namespace adafd {

namespace detail {

std::uint64_t mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

std::uint64_t bits_of(double t) { return std::bit_cast<std::uint64_t>(t); }

double unit_noise(std::uint64_t seed, std::uint64_t payload) {
  const std::uint64_t h = mix64(seed ^ mix64(payload));
  // 53 mantissa bits -> [0,1), stretched to [-1,1)
  return static_cast<double>(h >> 11) * 0x1p-52 - 1.0;
}

}  // namespace detail

NoisyOracle::NoisyOracle(std::function<double(double)> phi, double eps_f, std::uint64_t seed,
                         NoiseKind kind)
    : phi_(std::move(phi)), eps_base_(eps_f), eps_f_(eps_f), seed_(seed), kind_(kind) {
  if (eps_f < 0) throw ZeroNoiseLevel("negative noise level");
}

double NoisyOracle::value(double t) {
  std::lock_guard lock(*mu_);
  ++calls_;
  const std::uint64_t key = detail::bits_of(t);
  if (kind_ != NoiseKind::FreshUniform) {
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
  }
  ++misses_;
  double eps = 0.0;
  if (kind_ == NoiseKind::Uniform)
    eps = eps_base_ * detail::unit_noise(seed_, key);
  else if (kind_ == NoiseKind::FreshUniform)
    eps = eps_base_ * detail::unit_noise(seed_, fresh_ctr_++);
  const double v = a_ * (phi_(t) + eps) + b_;
  if (kind_ != NoiseKind::FreshUniform) cache_.emplace(key, v);
  return v;
}

double NoisyOracle::noiseless(double t) const { return a_ * phi_(t) + b_; }

std::uint64_t NoisyOracle::eval_count() const {
  std::lock_guard lock(*mu_);
  return misses_;
}

std::uint64_t NoisyOracle::call_count() const {
  std::lock_guard lock(*mu_);
  return calls_;
}

void NoisyOracle::clear_cache() {
  std::lock_guard lock(*mu_);
  cache_.clear();
}

NoisyOracle make_noisy(std::function<double(double)> phi, double eps_f, std::uint64_t seed,
                       NoiseKind kind) {
  return NoisyOracle(std::move(phi), eps_f, seed, kind);
}

NoisyOracle affine_view(const NoisyOracle& base, double a, double b) {
  if (a == 0.0) throw ZeroScale("affine view requires a != 0");
  NoisyOracle v(base.phi_, base.eps_base_, base.seed_, base.kind_);
  v.a_ = base.a_ * a;
  v.b_ = a * base.b_ + b;
  v.eps_f_ = std::fabs(v.a_) * base.eps_base_;
  return v;
}

NoisyMultivariate::NoisyMultivariate(std::function<double(const Eigen::VectorXd&)> phi,
                                     double eps_f, std::uint64_t seed, NoiseKind kind)
    : phi_(std::move(phi)), eps_f_(eps_f), seed_(seed), kind_(kind) {
  if (eps_f < 0) throw ZeroNoiseLevel("negative noise level");
}

std::size_t NoisyMultivariate::KeyHash::operator()(const std::vector<std::uint64_t>& k) const {
  std::uint64_t acc = 0x2545F4914F6CDD1Dull;
  for (auto b : k) acc = detail::mix64(acc ^ b);
  return static_cast<std::size_t>(acc);
}

double NoisyMultivariate::value(const Eigen::VectorXd& x) {
  std::vector<std::uint64_t> key(static_cast<std::size_t>(x.size()));
  for (Eigen::Index i = 0; i < x.size(); ++i)
    key[static_cast<std::size_t>(i)] = detail::bits_of(x[i]);

  std::lock_guard lock(*mu_);
  ++calls_;
  if (kind_ != NoiseKind::FreshUniform) {
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
  }
  ++misses_;
  double eps = 0.0;
  if (kind_ == NoiseKind::Uniform) {
    std::uint64_t payload = 0x6A09E667F3BCC909ull;
    for (auto b : key) payload = detail::mix64(payload ^ b);
    eps = eps_f_ * detail::unit_noise(seed_, payload);
  } else if (kind_ == NoiseKind::FreshUniform) {
    eps = eps_f_ * detail::unit_noise(seed_, fresh_ctr_++);
  }
  const double v = phi_(x) + eps;
  if (kind_ != NoiseKind::FreshUniform) cache_.emplace(std::move(key), v);
  return v;
}

double NoisyMultivariate::noiseless(const Eigen::VectorXd& x) const { return phi_(x); }

std::uint64_t NoisyMultivariate::eval_count() const {
  std::lock_guard lock(*mu_);
  return misses_;
}

std::uint64_t NoisyMultivariate::call_count() const {
  std::lock_guard lock(*mu_);
  return calls_;
}

void NoisyMultivariate::clear_cache() {
  std::lock_guard lock(*mu_);
  cache_.clear();
}

Slice::Slice(NoisyMultivariate& base, Eigen::VectorXd anchor, Eigen::VectorXd direction)
    : base_(&base), anchor_(std::move(anchor)), dir_(std::move(direction)) {}

double Slice::value(double t) { return base_->value(anchor_ + t * dir_); }

double Slice::noiseless(double t) const { return base_->noiseless(anchor_ + t * dir_); }

Slice coordinate_slice(NoisyMultivariate& base, const Eigen::VectorXd& x, int i) {
  if (i < 0 || i >= x.size()) throw IndexOutOfRange("coordinate index out of range");
  Eigen::VectorXd e = Eigen::VectorXd::Zero(x.size());
  e[i] = 1.0;
  return Slice(base, x, std::move(e));
}

Slice directional_slice(NoisyMultivariate& base, const Eigen::VectorXd& x,
                        const Eigen::VectorXd& p) {
  if (p.norm() == 0.0) throw ZeroScale("direction must be nonzero");
  return Slice(base, x, p);
}

}  // namespace adafd
