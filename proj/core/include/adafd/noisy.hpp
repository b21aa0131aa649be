#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <unordered_map>
#include <vector>

namespace adafd {

enum class NoiseKind { Uniform, None, FreshUniform };

/// One-dimensional noisy function as seen by testing ratios and searches.
/// value() is cached by the exact bit pattern of the abscissa; eval_count
/// increments only on cache misses.
class NoisyFunction {
public:
  virtual ~NoisyFunction() = default;
  virtual double value(double t) = 0;
  virtual double noiseless(double t) const = 0;
  virtual double noise_level() const = 0;
  virtual std::uint64_t eval_count() const = 0;
  virtual std::uint64_t call_count() const = 0;
};

namespace detail {
std::uint64_t mix64(std::uint64_t z);
/// Deterministic uniform draw on [-1, 1) from (seed, payload).
double unit_noise(std::uint64_t seed, std::uint64_t payload);
std::uint64_t bits_of(double t);
}  // namespace detail

/// Univariate oracle f(t) = a (phi(t) + eps(t)) + b with frozen noise
/// eps(t) = eps_base * u(hash(seed, bits(t))). The nominal noise level is
/// |a| * eps_base. Internally synchronized; shareable across threads.
class NoisyOracle final : public NoisyFunction {
public:
  NoisyOracle(std::function<double(double)> phi, double eps_f, std::uint64_t seed,
              NoiseKind kind = NoiseKind::Uniform);

  double value(double t) override;
  double noiseless(double t) const override;
  double noise_level() const override { return eps_f_; }
  std::uint64_t eval_count() const override;
  std::uint64_t call_count() const override;

  std::uint64_t seed() const { return seed_; }
  NoiseKind kind() const { return kind_; }
  void clear_cache();

  friend NoisyOracle affine_view(const NoisyOracle& base, double a, double b);

private:
  std::function<double(double)> phi_;
  double eps_base_;
  double a_ = 1.0, b_ = 0.0;
  double eps_f_;
  std::uint64_t seed_;
  NoiseKind kind_;

  // heap-held so oracles stay movable
  mutable std::unique_ptr<std::mutex> mu_ = std::make_unique<std::mutex>();
  std::unordered_map<std::uint64_t, double> cache_;
  std::uint64_t misses_ = 0, calls_ = 0, fresh_ctr_ = 0;
};

NoisyOracle make_noisy(std::function<double(double)> phi, double eps_f, std::uint64_t seed,
                       NoiseKind kind = NoiseKind::Uniform);

/// a f(t) + b over the same noise path; nominal noise level |a| eps_f.
/// Throws ZeroScale for a = 0. Counters and cache start fresh.
NoisyOracle affine_view(const NoisyOracle& base, double a, double b);

/// Multivariate oracle with noise hashed over the full evaluation point, so
/// a 1-D slice draws exactly the noise of the underlying point.
class NoisyMultivariate {
public:
  NoisyMultivariate(std::function<double(const Eigen::VectorXd&)> phi, double eps_f,
                    std::uint64_t seed, NoiseKind kind = NoiseKind::Uniform);

  double value(const Eigen::VectorXd& x);
  double noiseless(const Eigen::VectorXd& x) const;
  double noise_level() const { return eps_f_; }
  std::uint64_t eval_count() const;
  std::uint64_t call_count() const;

  /// Drops cached values (counters persist). Called between optimizer
  /// iterates so reuse mirrors what a single gradient estimate shares.
  void clear_cache();

private:
  struct KeyHash {
    std::size_t operator()(const std::vector<std::uint64_t>& k) const;
  };

  std::function<double(const Eigen::VectorXd&)> phi_;
  double eps_f_;
  std::uint64_t seed_;
  NoiseKind kind_;

  mutable std::unique_ptr<std::mutex> mu_ = std::make_unique<std::mutex>();
  std::unordered_map<std::vector<std::uint64_t>, double, KeyHash> cache_;
  std::uint64_t misses_ = 0, calls_ = 0, fresh_ctr_ = 0;
};

/// 1-D view t -> base(x + t * direction). Evaluation counting flows to the
/// owning multivariate oracle.
class Slice final : public NoisyFunction {
public:
  Slice(NoisyMultivariate& base, Eigen::VectorXd anchor, Eigen::VectorXd direction);

  double value(double t) override;
  double noiseless(double t) const override;
  double noise_level() const override { return base_->noise_level(); }
  std::uint64_t eval_count() const override { return base_->eval_count(); }
  std::uint64_t call_count() const override { return base_->call_count(); }

  const Eigen::VectorXd& anchor() const { return anchor_; }
  const Eigen::VectorXd& direction() const { return dir_; }

private:
  NoisyMultivariate* base_;
  Eigen::VectorXd anchor_, dir_;
};

/// Slice along basis vector e_i; throws IndexOutOfRange.
Slice coordinate_slice(NoisyMultivariate& base, const Eigen::VectorXd& x, int i);
/// Slice along a general direction p; throws ZeroScale when ||p|| = 0.
Slice directional_slice(NoisyMultivariate& base, const Eigen::VectorXd& x,
                        const Eigen::VectorXd& p);

}  // namespace adafd
