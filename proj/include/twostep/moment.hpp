#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "twostep/noise.hpp"
#include "twostep/quadratic.hpp"
#include "twostep/schedule.hpp"
#include "twostep/spectral.hpp"

namespace twostep {

/// One step of the per-mode second-moment recursion for Theta_n =
/// (eta_n, eta_{n-1}):
///   M' = F M F^T + diag((n alpha + beta)^2 c, 0),
///   F  = [[2 - (alpha+beta) h, beta h - 1], [1, 0]].
Eigen::Matrix2d moment_step(const Eigen::Matrix2d& M, const StepPair& pair,
                            double h, double c, std::int64_t n);

/// E eta_n^2 for a single mode started at eta_1, eta_0 = 0, via the exact
/// moment recursion.
double mode_second_moment(const StepPair& pair, double h, double c,
                          double eta1, std::int64_t n);

struct ExpectedExcess {
  double value = 0.0;  // E f(theta_N) - f_*
  bool diverged = false;
  std::int64_t first_bad = -1;
};

/// (1/(2N^2)) sum_i h_i E (eta_N^i)^2, exactly, with no sampling.
ExpectedExcess expected_excess(const QuadraticProblem& problem,
                               const Eigen::VectorXd& theta0,
                               const StepPair& pair, const NoiseSpec& noise,
                               std::int64_t N);

struct BiasVarianceSplit {
  double bias = 0.0;      // noiseless run from theta_0
  double variance = 0.0;  // noisy run from theta_*
};

/// The two halves sum to expected_excess by linearity of the recursion.
BiasVarianceSplit bias_variance_split(const QuadraticProblem& problem,
                                      const Eigen::VectorXd& theta0,
                                      const StepPair& pair,
                                      const NoiseSpec& noise, std::int64_t N);

/// Closed-form per-mode variance accumulation
///   h c sum_{j=1}^{n-1} (j alpha + beta)^2 eta_{n-j}(unit)^2
/// where eta_m(unit) is the noiseless mode response to eta_1 = 1. Equals
/// E eta_n^2 of the noise-only run (2 n^2 times that mode's variance
/// contribution to the expected excess).
double variance_term_closed_form(const EigenMode& mode, double c,
                                 std::int64_t n);

/// Expected-excess curve over horizons, as CSV (N, total, bias, variance).
void write_expected_excess_csv(const QuadraticProblem& problem,
                               const Eigen::VectorXd& theta0,
                               const StepPair& pair, const NoiseSpec& noise,
                               const std::vector<std::int64_t>& horizons,
                               const std::string& path);

}  // namespace twostep
