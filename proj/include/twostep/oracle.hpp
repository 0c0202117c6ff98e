#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "twostep/noise.hpp"
#include "twostep/quadratic.hpp"

namespace twostep {

/// A (possibly noisy) gradient oracle. Noise draws are keyed by the step
/// index, so two algorithms run on the same seed see the identical noise
/// sequence regardless of how many queries each makes per step.
class GradientOracle {
 public:
  virtual ~GradientOracle() = default;

  /// Noisy gradient at `point`, using the noise draw of step `step`.
  virtual Eigen::VectorXd query(const Eigen::VectorXd& point,
                                std::int64_t step) = 0;

  /// The additive noise term eps_step (query = gradient - eps). Oracles whose
  /// noise depends on the query point (true SGD) throw.
  virtual Eigen::VectorXd noise_at(std::int64_t step) = 0;

  virtual const NoiseSpec& noise_spec() const = 0;
};

std::unique_ptr<GradientOracle> exact_oracle(const QuadraticProblem& problem);

/// gradient(theta) - eps_n with eps_n = sum_i sqrt(c_i) g_i p_i.
std::unique_ptr<GradientOracle> additive_noise_oracle(
    const QuadraticProblem& problem, Eigen::VectorXd per_mode_variance,
    std::uint64_t seed);

/// Semi-stochastic least-squares oracle: H(theta - theta_*) - r_n x_n with
/// x_n ~ N(0, H) and Gaussian residual of standard deviation sigma, so
/// E[eps (x) eps] = sigma^2 H exactly.
std::unique_ptr<GradientOracle> ls_semi_stochastic_oracle(
    const QuadraticProblem& problem, double sigma, std::uint64_t seed);

/// Stream of regression pairs (x_n, y_n), x_n ~ N(0, H),
/// y_n = <theta_*, x_n> + r_n.
class RegressionStream {
 public:
  RegressionStream(const QuadraticProblem& problem, double sigma,
                   std::uint64_t seed);

  Eigen::VectorXd input_at(std::int64_t step) const;
  double output_at(std::int64_t step) const;
  double residual_at(std::int64_t step) const;
  int dim() const { return problem_->dim(); }
  double sigma() const { return sigma_; }
  const QuadraticProblem& problem() const { return *problem_; }

  /// Persist steps 1..count as CSV (x components then y) for replay.
  void write_csv(const std::string& path, std::int64_t count) const;

 private:
  const QuadraticProblem* problem_;
  double sigma_;
  std::uint64_t seed_;
};

/// Rows of a persisted regression stream.
struct RegressionData {
  std::vector<Eigen::VectorXd> inputs;
  std::vector<double> outputs;
};

RegressionData read_regression_csv(const std::string& path);

/// True SGD oracle for the stream: x_n <x_n, theta> - y_n x_n. Its noise
/// depends on the query point; declared structured only by conjecture.
std::unique_ptr<GradientOracle> ls_sgd_oracle(const RegressionStream& stream);

}  // namespace twostep
