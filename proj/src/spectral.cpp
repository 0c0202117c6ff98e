#include "twostep/spectral.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

namespace twostep {

namespace {

constexpr double kUnitTol = 1e-12;

const char* class_name(RootClass c) {
  switch (c) {
    case RootClass::RealDistinct: return "real_distinct";
    case RootClass::ComplexPair: return "complex_pair";
    case RootClass::Coalescing: return "coalescing";
  }
  return "?";
}

const char* stability_name(Stability s) {
  switch (s) {
    case Stability::StrictlyStable: return "strictly_stable";
    case Stability::MarginallyStable: return "marginally_stable";
    case Stability::Unstable: return "unstable";
  }
  return "?";
}

Stability stability_from_modulus(double m) {
  if (m < 1.0 - kUnitTol) return Stability::StrictlyStable;
  if (m <= 1.0 + kUnitTol) return Stability::MarginallyStable;
  return Stability::Unstable;
}

}  // namespace

double discriminant(const StepPair& pair, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("discriminant: h must be > 0");
  const double half_sum = 0.5 * (pair.alpha + pair.beta);
  return h * (half_sum * half_sum * h - pair.alpha);
}

double coalescing_tol(const StepPair& pair, double h) {
  const double s = 0.5 * (pair.alpha + pair.beta) * h;
  return 1e-12 * std::max(1.0, s * s);
}

EigenMode classify(const StepPair& pair, double h, double tol) {
  if (!(h > 0.0)) throw std::invalid_argument("classify: h must be > 0");
  if (tol < 0.0) throw std::invalid_argument("classify: tol must be >= 0");
  EigenMode mode;
  mode.h = h;
  mode.pair = pair;
  mode.r = 1.0 - 0.5 * (pair.alpha + pair.beta) * h;
  mode.discriminant = discriminant(pair, h);
  if (mode.discriminant > tol) {
    mode.cls = RootClass::RealDistinct;
    const double root = std::sqrt(mode.discriminant);
    mode.r_plus = mode.r + root;
    mode.r_minus = mode.r - root;
    mode.max_root_modulus =
        std::max(std::abs(mode.r_plus), std::abs(mode.r_minus));
  } else if (mode.discriminant < -tol) {
    mode.cls = RootClass::ComplexPair;
    mode.rho = std::sqrt(1.0 - pair.beta * h);
    mode.omega = std::atan2(std::sqrt(-mode.discriminant), mode.r);
    mode.max_root_modulus = mode.rho;
  } else {
    mode.cls = RootClass::Coalescing;
    mode.r_double = mode.r;
    mode.max_root_modulus = std::abs(mode.r);
  }
  mode.stability = stability_from_modulus(mode.max_root_modulus);
  return mode;
}

Stability stability_region(const StepPair& pair, double h) {
  return classify(pair, h).stability;
}

double closed_form_eta(const EigenMode& mode, double eta1, std::int64_t n) {
  if (n < 0) throw std::invalid_argument("closed_form_eta: n must be >= 0");
  if (n == 0) return 0.0;
  const double nn = double(n);
  switch (mode.cls) {
    case RootClass::RealDistinct: {
      const double root = std::sqrt(mode.discriminant);
      return eta1 * (std::pow(mode.r_plus, nn) - std::pow(mode.r_minus, nn)) /
             (2.0 * root);
    }
    case RootClass::ComplexPair:
      return eta1 * std::sin(mode.omega * nn) *
             std::pow(mode.rho, nn - 1.0) / std::sin(mode.omega);
    case RootClass::Coalescing:
      return nn * eta1 * std::pow(mode.r_double, nn - 1.0);
  }
  throw std::logic_error("unreachable root class");
}

double closed_form_excess(const QuadraticProblem& problem,
                          const Eigen::VectorXd& theta0, const StepPair& pair,
                          std::int64_t n) {
  if (n < 1)
    throw std::invalid_argument("closed_form_excess: n must be >= 1");
  const Eigen::VectorXd eta1 =
      problem.to_eigenbasis(theta0 - problem.optimum());
  double total = 0.0;
  for (int i = 0; i < problem.dim(); ++i) {
    const double h = problem.eigenvalues()[i];
    const EigenMode mode = classify(pair, h);
    const double eta = closed_form_eta(mode, eta1[i], n);
    total += 0.5 * h * (eta / double(n)) * (eta / double(n));
  }
  return total;
}

std::vector<StabilityCell> stability_map(const std::vector<double>& alpha_grid,
                                         const std::vector<double>& beta_grid,
                                         double h) {
  std::vector<StabilityCell> cells;
  cells.reserve(alpha_grid.size() * beta_grid.size());
  for (double beta : beta_grid) {
    for (double alpha : alpha_grid) {
      const EigenMode mode = classify({alpha, beta}, h);
      cells.push_back(
          {alpha, beta, mode.cls, mode.stability, mode.max_root_modulus});
    }
  }
  return cells;
}

void write_stability_csv(const std::vector<StabilityCell>& cells,
                         const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out.precision(17);
  out << "alpha,beta,class,stability,max_root_modulus\n";
  for (const auto& c : cells)
    out << c.alpha << "," << c.beta << "," << class_name(c.cls) << ","
        << stability_name(c.stability) << "," << c.max_root_modulus << "\n";
}

}  // namespace twostep
