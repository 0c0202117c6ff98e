#include "twostep/moment.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <stdexcept>

namespace twostep {

namespace {

Eigen::Matrix2d companion(const StepPair& pair, double h) {
  Eigen::Matrix2d F;
  F << 2.0 - (pair.alpha + pair.beta) * h, pair.beta * h - 1.0,  //
      1.0, 0.0;
  return F;
}

double mode_noise_variance(const NoiseSpec& noise, int i) {
  return noise.kind == NoiseKind::None ? 0.0 : noise.c[i];
}

}  // namespace

Eigen::Matrix2d moment_step(const Eigen::Matrix2d& M, const StepPair& pair,
                            double h, double c, std::int64_t n) {
  if (n < 1) throw std::invalid_argument("moment_step: n must be >= 1");
  const Eigen::Matrix2d F = companion(pair, h);
  Eigen::Matrix2d next = F * M * F.transpose();
  const double scale = double(n) * pair.alpha + pair.beta;
  next(0, 0) += scale * scale * c;
  // symmetrize against drift
  next(1, 0) = next(0, 1) = 0.5 * (next(0, 1) + next(1, 0));
  return next;
}

double mode_second_moment(const StepPair& pair, double h, double c,
                          double eta1, std::int64_t n) {
  if (n < 1) throw std::invalid_argument("mode_second_moment: n must be >= 1");
  Eigen::Matrix2d M = Eigen::Matrix2d::Zero();
  M(0, 0) = eta1 * eta1;
  for (std::int64_t k = 1; k < n; ++k) M = moment_step(M, pair, h, c, k);
  return M(0, 0);
}

ExpectedExcess expected_excess(const QuadraticProblem& problem,
                               const Eigen::VectorXd& theta0,
                               const StepPair& pair, const NoiseSpec& noise,
                               std::int64_t N) {
  if (N < 1) throw std::invalid_argument("expected_excess: N must be >= 1");
  if (noise.kind != NoiseKind::None && noise.c.size() != problem.dim())
    throw std::invalid_argument("expected_excess: noise dimension mismatch");
  const Eigen::VectorXd eta1 =
      problem.to_eigenbasis(theta0 - problem.optimum());
  ExpectedExcess out;
  double total = 0.0;
  for (int i = 0; i < problem.dim(); ++i) {
    const double h = problem.eigenvalues()[i];
    const double second = mode_second_moment(
        pair, h, mode_noise_variance(noise, i), eta1[i], N);
    if (!std::isfinite(second)) {
      out.diverged = true;
      out.first_bad = N;
      out.value = std::numeric_limits<double>::infinity();
      return out;
    }
    total += h * second;
  }
  out.value = total / (2.0 * double(N) * double(N));
  return out;
}

BiasVarianceSplit bias_variance_split(const QuadraticProblem& problem,
                                      const Eigen::VectorXd& theta0,
                                      const StepPair& pair,
                                      const NoiseSpec& noise, std::int64_t N) {
  BiasVarianceSplit split;
  split.bias =
      expected_excess(problem, theta0, pair, NoiseSpec::none(), N).value;
  split.variance =
      expected_excess(problem, problem.optimum(), pair, noise, N).value;
  return split;
}

double variance_term_closed_form(const EigenMode& mode, double c,
                                 std::int64_t n) {
  if (n < 1)
    throw std::invalid_argument("variance_term_closed_form: n must be >= 1");
  double sum = 0.0;
  for (std::int64_t j = 1; j < n; ++j) {
    const double w = double(j) * mode.pair.alpha + mode.pair.beta;
    const double response = closed_form_eta(mode, 1.0, n - j);
    sum += w * w * response * response;
  }
  return mode.h * c * sum;
}

void write_expected_excess_csv(const QuadraticProblem& problem,
                               const Eigen::VectorXd& theta0,
                               const StepPair& pair, const NoiseSpec& noise,
                               const std::vector<std::int64_t>& horizons,
                               const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out.precision(17);
  out << "N,total,bias,variance\n";
  for (std::int64_t N : horizons) {
    const double total = expected_excess(problem, theta0, pair, noise, N).value;
    const BiasVarianceSplit split =
        bias_variance_split(problem, theta0, pair, noise, N);
    out << N << "," << total << "," << split.bias << "," << split.variance
        << "\n";
  }
}

}  // namespace twostep
