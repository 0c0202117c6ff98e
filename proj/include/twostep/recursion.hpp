#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "twostep/oracle.hpp"
#include "twostep/quadratic.hpp"
#include "twostep/schedule.hpp"

namespace twostep {

/// Two consecutive iterates of the theta-form recursion. At n = 1 both
/// entries equal theta_0.
struct IterateState {
  Eigen::VectorXd current;   // theta_n
  Eigen::VectorXd previous;  // theta_{n-1}
  std::int64_t index = 1;    // n

  static IterateState initial(const Eigen::VectorXd& theta0) {
    return {theta0, theta0, 1};
  }
};

struct Trajectory {
  std::vector<double> excess;      // excess[n] = f(theta_n) - f_*
  std::vector<double> theta_norm;  // ||theta_n||
  bool diverged = false;
  std::int64_t first_bad = -1;  // first n with non-finite state, -1 if none

  void write_csv(const std::string& path) const;
};

/// One theta-form step: the oracle is queried at
///   (n(alpha+beta)/(n alpha + beta)) theta_n
///   - ((n-1) beta/(n alpha + beta)) theta_{n-1}
/// with noise index n+1, and
///   theta_{n+1} = (2n theta_n - (n-1) theta_{n-1}
///                  - (n alpha + beta) g) / (n+1).
/// When n alpha + beta = 0 the oracle is not queried.
IterateState step(GradientOracle& oracle, const IterateState& state,
                  const StepPair& pair);

Trajectory run(GradientOracle& oracle, const QuadraticProblem& problem,
               const Eigen::VectorXd& theta0, const StepPair& pair,
               std::int64_t N);

/// Resolves the schedule (per step when anytime) and runs. `r` feeds the
/// horizon-tuned rules; L is taken from the problem.
Trajectory run(GradientOracle& oracle, const QuadraticProblem& problem,
               const Eigen::VectorXd& theta0, const Schedule& schedule,
               std::int64_t N, double r, const NoiseSummary& noise);

/// One reduced-form step per eigen-coordinate:
///   eta' = (1 - alpha h) eta + (1 - beta h)(eta - eta_prev) + xi
/// where xi is the already-scaled noise term (n alpha + beta) eps.
Eigen::VectorXd reduced_step(const Eigen::VectorXd& eta,
                             const Eigen::VectorXd& eta_prev,
                             const StepPair& pair, const Eigen::VectorXd& h,
                             const Eigen::VectorXd& xi);

/// Full reduced-form run in eigen-coordinates, eta_n = n P^T (theta_n -
/// theta_*), driven by the same oracle noise sequence as the theta form.
struct ReducedRun {
  Eigen::MatrixXd eta;         // row n = eta_n, rows 0..N
  std::vector<double> excess;  // excess[n] = (1/2n^2) sum h_i eta_n_i^2
};

ReducedRun reduced_run(GradientOracle& oracle, const QuadraticProblem& problem,
                       const Eigen::VectorXd& theta0, const StepPair& pair,
                       std::int64_t N);

/// Averaged gradient descent in its primal form: psi_{n+1} = psi_n
/// - gamma g(psi_n), theta_{n+1} = theta_n + (psi_{n+1} - theta_n)/(n+1).
/// Matches run(...) with pair (0, gamma) on the same oracle draws.
Trajectory avgd_reference(GradientOracle& oracle,
                          const QuadraticProblem& problem,
                          const Eigen::VectorXd& theta0, double gamma,
                          std::int64_t N);

}  // namespace twostep
