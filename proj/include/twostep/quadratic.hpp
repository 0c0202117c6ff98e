#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

namespace twostep {

/// Quadratic objective f(theta) = 1/2 <theta, H theta> - <q, theta> stored in
/// eigen-decomposed form H = P Diag(h) P^T, with known optimum theta_*.
/// Eigenvalues are kept sorted ascending and strictly positive, so the
/// optimum is unique and all per-eigenmode quantities are exact.
class QuadraticProblem {
 public:
  QuadraticProblem(Eigen::VectorXd eigenvalues, Eigen::MatrixXd basis,
                   Eigen::VectorXd optimum);

  int dim() const { return static_cast<int>(eigenvalues_.size()); }
  const Eigen::VectorXd& eigenvalues() const { return eigenvalues_; }
  const Eigen::MatrixXd& basis() const { return basis_; }
  const Eigen::VectorXd& optimum() const { return optimum_; }
  const Eigen::VectorXd& linear_term() const { return linear_term_; }
  double largest() const { return eigenvalues_[dim() - 1]; }
  double smallest() const { return eigenvalues_[0]; }

  Eigen::VectorXd gradient(const Eigen::VectorXd& theta) const;
  double excess(const Eigen::VectorXd& theta) const;

  /// Coordinates in the eigenbasis: coords_i = p_i^T v.
  Eigen::VectorXd to_eigenbasis(const Eigen::VectorXd& v) const;
  Eigen::VectorXd from_eigenbasis(const Eigen::VectorXd& coords) const;

  /// Dense Hessian, for cross-checks only.
  Eigen::MatrixXd dense_hessian() const;

  void save(const std::string& path) const;
  static QuadraticProblem load(const std::string& path);

 private:
  Eigen::VectorXd eigenvalues_;  // ascending, all > 0
  Eigen::MatrixXd basis_;        // orthogonal, column i pairs with h_i
  Eigen::VectorXd optimum_;
  Eigen::VectorXd linear_term_;  // q = H theta_*
};

/// Eigenvalues 1/k^m for k = 1..d.
std::vector<double> spectrum_power_law(int d, int m);

struct ProblemInstance {
  QuadraticProblem problem;
  Eigen::VectorXd theta0;  // ||theta0 - theta_*|| = r by construction
};

/// Seeded random instance: random orthogonal basis, random optimum, and a
/// starting point at distance r from it.
ProblemInstance make_problem(const std::vector<double>& eigenvalues, double r,
                             std::uint64_t seed);

}  // namespace twostep
