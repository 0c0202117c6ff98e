#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "twostep/oracle.hpp"
#include "twostep/quadratic.hpp"
#include "twostep/recursion.hpp"

namespace twostep {

/// Per-step schedule value, indexed from n = 1.
using StepFn = std::function<double(std::int64_t)>;

struct AcsaConfig {
  StepFn gamma;  // gamma_n
  StepFn beta;   // beta_n >= 1
};

struct SageConfig {
  StepFn smoothness;  // L_n
  StepFn alpha;       // alpha_n in (0, 1]
};

struct AccRdaConfig {
  StepFn alpha;  // alpha_n > 0
  StepFn beta;   // beta_n (must be constant for the reduction)
  double L = 1.0;
};

struct BaselineRun {
  Trajectory trajectory;
  std::vector<Eigen::VectorXd> iterates;  // entry n = reported iterate n
};

/// AC-SA: x_md = x/beta_n + (1-1/beta_n) x_ag; x' = x - gamma_n g(x_md);
/// x_ag' = x'/beta_n + (1-1/beta_n) x_ag. Reports the aggregated iterate
/// x_ag; entries 0 and 1 both equal the start.
BaselineRun run_acsa(const AcsaConfig& config, GradientOracle& oracle,
                     const QuadraticProblem& problem,
                     const Eigen::VectorXd& x1, std::int64_t N);

/// SAGE: x_n = (1-alpha_n) y_{n-1} + alpha_n z_{n-1}; y_n = x_n - g/L_n;
/// z_n = z_{n-1} - g/(alpha_n L_n). Reports y_n.
BaselineRun run_sage(const SageConfig& config, GradientOracle& oracle,
                     const QuadraticProblem& problem,
                     const Eigen::VectorXd& y0, std::int64_t N);

/// Accelerated RDA: A_n = A_{n-1}+alpha_n, tau_n = alpha_n/A_n,
/// u_n = (1-tau_n) w_{n-1} + tau_n v_{n-1}, dual average of gradients,
/// v_n = v_0 - (A_n/(L+beta_n)) gbar_n, w_n = (1-tau_n) w_{n-1} + tau_n v_n.
/// Reports w_n.
BaselineRun run_accrda(const AccRdaConfig& config, GradientOracle& oracle,
                       const QuadraticProblem& problem,
                       const Eigen::VectorXd& w0, std::int64_t N);

enum class BaselineKind { Acsa, Sage, AccRda };

/// The (step size delta_n, momentum m_n) pair each baseline induces in the
/// common two-step form
///   y = theta_n + m_n (theta_n - theta_{n-1}),
///   theta_{n+1} = y - delta_n g(y).
struct TwoStepCoefficients {
  double delta = 0.0;
  double momentum = 0.0;
};

TwoStepCoefficients reduce_to_unified(const AcsaConfig& config, std::int64_t n);
TwoStepCoefficients reduce_to_unified(const SageConfig& config, std::int64_t n);
TwoStepCoefficients reduce_to_unified(const AccRdaConfig& config,
                                      std::int64_t n);

/// Runs the common two-step form directly with per-step coefficients and the
/// given oracle step indices, for coupled equivalence tests.
BaselineRun run_reduced_two_step(
    const std::function<TwoStepCoefficients(std::int64_t)>& coeffs,
    GradientOracle& oracle, const QuadraticProblem& problem,
    const Eigen::VectorXd& theta0, std::int64_t N);

/// Published step-size choices, recorded here as configuration (see README
/// for the formulas and sources).
AcsaConfig acsa_optimal(double L, double r, double trace_C);
SageConfig sage_optimal(double L, double r, double trace_C);
AccRdaConfig accrda_optimal(double L, double r, double trace_C);
/// Constant-beta variant satisfying delta_n <= ((n-1)/n)/L.
AccRdaConfig accrda_constant_beta(double L, double beta);

}  // namespace twostep
