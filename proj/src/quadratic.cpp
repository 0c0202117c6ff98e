#include "twostep/quadratic.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "twostep/random.hpp"

namespace twostep {

using json = nlohmann::json;

QuadraticProblem::QuadraticProblem(Eigen::VectorXd eigenvalues,
                                   Eigen::MatrixXd basis,
                                   Eigen::VectorXd optimum)
    : eigenvalues_(std::move(eigenvalues)),
      basis_(std::move(basis)),
      optimum_(std::move(optimum)) {
  const int d = static_cast<int>(eigenvalues_.size());
  if (d < 1) throw std::invalid_argument("problem dimension must be >= 1");
  if (basis_.rows() != d || basis_.cols() != d || optimum_.size() != d)
    throw std::invalid_argument("inconsistent problem dimensions");
  for (int i = 0; i < d; ++i) {
    if (!(eigenvalues_[i] > 0.0))
      throw std::invalid_argument("eigenvalues must be strictly positive");
    if (i > 0 && eigenvalues_[i] < eigenvalues_[i - 1])
      throw std::invalid_argument("eigenvalues must be sorted ascending");
  }
  const double ortho_err =
      (basis_.transpose() * basis_ - Eigen::MatrixXd::Identity(d, d))
          .cwiseAbs()
          .maxCoeff();
  if (ortho_err > 1e-10)
    throw std::invalid_argument("basis is not orthogonal");
  // q = H theta_*, via the decomposition
  linear_term_ =
      basis_ * (eigenvalues_.cwiseProduct(basis_.transpose() * optimum_));
}

Eigen::VectorXd QuadraticProblem::gradient(const Eigen::VectorXd& theta) const {
  if (theta.size() != dim())
    throw std::invalid_argument("gradient: dimension mismatch");
  return basis_ * (eigenvalues_.cwiseProduct(basis_.transpose() * theta)) -
         linear_term_;
}

double QuadraticProblem::excess(const Eigen::VectorXd& theta) const {
  if (theta.size() != dim())
    throw std::invalid_argument("excess: dimension mismatch");
  const Eigen::VectorXd c = basis_.transpose() * (theta - optimum_);
  return 0.5 * c.cwiseAbs2().dot(eigenvalues_);
}

Eigen::VectorXd QuadraticProblem::to_eigenbasis(const Eigen::VectorXd& v) const {
  if (v.size() != dim())
    throw std::invalid_argument("to_eigenbasis: dimension mismatch");
  return basis_.transpose() * v;
}

Eigen::VectorXd QuadraticProblem::from_eigenbasis(
    const Eigen::VectorXd& coords) const {
  if (coords.size() != dim())
    throw std::invalid_argument("from_eigenbasis: dimension mismatch");
  return basis_ * coords;
}

Eigen::MatrixXd QuadraticProblem::dense_hessian() const {
  return basis_ * eigenvalues_.asDiagonal() * basis_.transpose();
}

void QuadraticProblem::save(const std::string& path) const {
  json j;
  j["dim"] = dim();
  j["eigenvalues"] = std::vector<double>(eigenvalues_.begin(),
                                         eigenvalues_.end());
  std::vector<double> flat(basis_.size());
  Eigen::Map<Eigen::MatrixXd>(flat.data(), basis_.rows(), basis_.cols()) =
      basis_;
  j["basis"] = flat;  // column-major
  j["optimum"] = std::vector<double>(optimum_.begin(), optimum_.end());
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << j.dump(2) << "\n";
}

QuadraticProblem QuadraticProblem::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  json j;
  in >> j;
  const int d = j.at("dim").get<int>();
  const auto eig = j.at("eigenvalues").get<std::vector<double>>();
  const auto flat = j.at("basis").get<std::vector<double>>();
  const auto opt = j.at("optimum").get<std::vector<double>>();
  if (static_cast<int>(eig.size()) != d ||
      static_cast<int>(flat.size()) != d * d ||
      static_cast<int>(opt.size()) != d)
    throw std::runtime_error("malformed problem file " + path);
  Eigen::VectorXd ev = Eigen::Map<const Eigen::VectorXd>(eig.data(), d);
  Eigen::MatrixXd P = Eigen::Map<const Eigen::MatrixXd>(flat.data(), d, d);
  Eigen::VectorXd th = Eigen::Map<const Eigen::VectorXd>(opt.data(), d);
  return QuadraticProblem(std::move(ev), std::move(P), std::move(th));
}

std::vector<double> spectrum_power_law(int d, int m) {
  if (d < 1) throw std::invalid_argument("spectrum_power_law: d must be >= 1");
  if (m < 0) throw std::invalid_argument("spectrum_power_law: m must be >= 0");
  std::vector<double> h(d);
  for (int k = 1; k <= d; ++k) h[k - 1] = 1.0 / std::pow(double(k), m);
  return h;
}

ProblemInstance make_problem(const std::vector<double>& eigenvalues, double r,
                             std::uint64_t seed) {
  if (!(r > 0.0)) throw std::invalid_argument("optimum distance must be > 0");
  const int d = static_cast<int>(eigenvalues.size());
  if (d < 1) throw std::invalid_argument("problem dimension must be >= 1");
  Eigen::VectorXd ev = Eigen::Map<const Eigen::VectorXd>(eigenvalues.data(), d);
  std::sort(ev.begin(), ev.end());

  std::mt19937_64 rng(mix_seed(seed, 0));
  Eigen::MatrixXd G(d, d);
  for (int j = 0; j < d; ++j) G.col(j) = gaussian_vector(rng, d);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(G);
  Eigen::MatrixXd P = qr.householderQ();
  // Fix the sign ambiguity so that the same seed always yields the same P.
  const Eigen::MatrixXd R = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < d; ++j)
    if (R(j, j) < 0.0) P.col(j) = -P.col(j);

  Eigen::VectorXd theta_star = gaussian_vector(rng, d);
  Eigen::VectorXd u = gaussian_vector(rng, d);
  while (u.norm() == 0.0) u = gaussian_vector(rng, d);
  u.normalize();

  QuadraticProblem problem(std::move(ev), std::move(P), std::move(theta_star));
  Eigen::VectorXd theta0 = problem.optimum() + r * u;
  return ProblemInstance{std::move(problem), std::move(theta0)};
}

}  // namespace twostep
