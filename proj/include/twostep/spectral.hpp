#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "twostep/quadratic.hpp"
#include "twostep/schedule.hpp"

namespace twostep {

enum class RootClass { RealDistinct, ComplexPair, Coalescing };
enum class Stability { StrictlyStable, MarginallyStable, Unstable };

/// Per-eigenvalue analysis of the order-two recursion
///   eta_{n+1} = 2 r eta_n - (1 - beta h) eta_{n-1},
/// i.e. of the companion matrix with characteristic polynomial
///   X^2 - 2 r X + (1 - beta h),  r = 1 - ((alpha+beta)/2) h.
struct EigenMode {
  double h = 0.0;
  StepPair pair;
  double r = 0.0;             // root midpoint
  double discriminant = 0.0;  // h(((alpha+beta)/2)^2 h - alpha)
  RootClass cls = RootClass::RealDistinct;
  Stability stability = Stability::Unstable;
  double max_root_modulus = 0.0;

  // RealDistinct
  double r_plus = 0.0;
  double r_minus = 0.0;
  // ComplexPair: roots rho e^{+-i omega}
  double rho = 0.0;
  double omega = 0.0;
  // Coalescing
  double r_double = 0.0;
};

double discriminant(const StepPair& pair, double h);

/// Default coalescing tolerance, relative to the squared midpoint shift.
double coalescing_tol(const StepPair& pair, double h);

EigenMode classify(const StepPair& pair, double h, double tol);
inline EigenMode classify(const StepPair& pair, double h) {
  return classify(pair, h, coalescing_tol(pair, h));
}

Stability stability_region(const StepPair& pair, double h);

/// eta_n under eta_0 = 0, eta_1 = eta1 and the mode's recursion.
double closed_form_eta(const EigenMode& mode, double eta1, std::int64_t n);

/// (1/2n^2) sum_i h_i closed_form_eta_i(n)^2 for the noiseless recursion.
double closed_form_excess(const QuadraticProblem& problem,
                          const Eigen::VectorXd& theta0, const StepPair& pair,
                          std::int64_t n);

struct StabilityCell {
  double alpha = 0.0;
  double beta = 0.0;
  RootClass cls = RootClass::RealDistinct;
  Stability stability = Stability::Unstable;
  double max_root_modulus = 0.0;
};

std::vector<StabilityCell> stability_map(const std::vector<double>& alpha_grid,
                                         const std::vector<double>& beta_grid,
                                         double h);

void write_stability_csv(const std::vector<StabilityCell>& cells,
                         const std::string& path);

}  // namespace twostep
