#include "twostep/recursion.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <limits>

namespace twostep {

namespace {

bool finite(const Eigen::VectorXd& v) { return v.allFinite(); }

void mark_diverged(Trajectory& t, std::int64_t n, std::int64_t N) {
  t.diverged = true;
  t.first_bad = n;
  for (std::int64_t k = n; k <= N; ++k) {
    t.excess[size_t(k)] = std::numeric_limits<double>::infinity();
    t.theta_norm[size_t(k)] = std::numeric_limits<double>::infinity();
  }
}

}  // namespace

void Trajectory::write_csv(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out.precision(17);
  out << "n,excess,theta_norm\n";
  for (size_t n = 0; n < excess.size(); ++n)
    out << n << "," << excess[n] << "," << theta_norm[n] << "\n";
}

IterateState step(GradientOracle& oracle, const IterateState& state,
                  const StepPair& pair) {
  if (state.index < 1) throw std::invalid_argument("step index must be >= 1");
  if (state.current.size() != state.previous.size())
    throw std::invalid_argument("step: dimension mismatch");
  const double n = double(state.index);
  const double coeff = n * pair.alpha + pair.beta;
  Eigen::VectorXd next =
      (2.0 * n * state.current - (n - 1.0) * state.previous) / (n + 1.0);
  if (coeff != 0.0) {
    const Eigen::VectorXd query_point =
        (n * (pair.alpha + pair.beta) / coeff) * state.current -
        ((n - 1.0) * pair.beta / coeff) * state.previous;
    next -= (coeff / (n + 1.0)) * oracle.query(query_point, state.index + 1);
  }
  return {std::move(next), state.current, state.index + 1};
}

static Trajectory run_impl(GradientOracle& oracle,
                           const QuadraticProblem& problem,
                           const Eigen::VectorXd& theta0,
                           const std::function<StepPair(std::int64_t)>& pair_at,
                           std::int64_t N) {
  if (N < 1) throw std::invalid_argument("run: horizon must be >= 1");
  Trajectory t;
  t.excess.assign(size_t(N) + 1, 0.0);
  t.theta_norm.assign(size_t(N) + 1, 0.0);
  t.excess[0] = problem.excess(theta0);
  t.theta_norm[0] = theta0.norm();
  t.excess[1] = t.excess[0];
  t.theta_norm[1] = t.theta_norm[0];
  IterateState state = IterateState::initial(theta0);
  for (std::int64_t n = 1; n < N; ++n) {
    state = step(oracle, state, pair_at(n));
    if (!finite(state.current)) {
      mark_diverged(t, n + 1, N);
      return t;
    }
    t.excess[size_t(n) + 1] = problem.excess(state.current);
    t.theta_norm[size_t(n) + 1] = state.current.norm();
    if (!std::isfinite(t.excess[size_t(n) + 1])) {
      mark_diverged(t, n + 1, N);
      return t;
    }
  }
  return t;
}

Trajectory run(GradientOracle& oracle, const QuadraticProblem& problem,
               const Eigen::VectorXd& theta0, const StepPair& pair,
               std::int64_t N) {
  return run_impl(oracle, problem, theta0,
                  [&](std::int64_t) { return pair; }, N);
}

Trajectory run(GradientOracle& oracle, const QuadraticProblem& problem,
               const Eigen::VectorXd& theta0, const Schedule& schedule,
               std::int64_t N, double r, const NoiseSummary& noise) {
  const double L = problem.largest();
  if (schedule.anytime) {
    return run_impl(
        oracle, problem, theta0,
        [&](std::int64_t n) {
          return resolve_schedule(schedule, L, r, noise, int(n));
        },
        N);
  }
  const int horizon = schedule.horizon > 1 ? schedule.horizon : int(N);
  const StepPair pair = resolve_schedule(schedule, L, r, noise, horizon);
  return run(oracle, problem, theta0, pair, N);
}

Eigen::VectorXd reduced_step(const Eigen::VectorXd& eta,
                             const Eigen::VectorXd& eta_prev,
                             const StepPair& pair, const Eigen::VectorXd& h,
                             const Eigen::VectorXd& xi) {
  return (1.0 - pair.alpha * h.array()) * eta.array() +
         (1.0 - pair.beta * h.array()) * (eta.array() - eta_prev.array()) +
         xi.array();
}

ReducedRun reduced_run(GradientOracle& oracle, const QuadraticProblem& problem,
                       const Eigen::VectorXd& theta0, const StepPair& pair,
                       std::int64_t N) {
  if (N < 1) throw std::invalid_argument("reduced_run: horizon must be >= 1");
  const int d = problem.dim();
  const Eigen::VectorXd& h = problem.eigenvalues();
  ReducedRun out;
  out.eta.setZero(N + 1, d);
  out.excess.assign(size_t(N) + 1, 0.0);
  out.excess[0] = problem.excess(theta0);
  Eigen::VectorXd eta_prev = Eigen::VectorXd::Zero(d);
  Eigen::VectorXd eta = problem.to_eigenbasis(theta0 - problem.optimum());
  out.eta.row(1) = eta;
  out.excess[1] = 0.5 * h.dot(eta.cwiseAbs2());
  for (std::int64_t n = 1; n < N; ++n) {
    const double scale = double(n) * pair.alpha + pair.beta;
    Eigen::VectorXd xi = Eigen::VectorXd::Zero(d);
    if (scale != 0.0)
      xi = scale * problem.to_eigenbasis(oracle.noise_at(n + 1));
    Eigen::VectorXd next = reduced_step(eta, eta_prev, pair, h, xi);
    eta_prev = std::move(eta);
    eta = std::move(next);
    out.eta.row(n + 1) = eta;
    const double m = double(n + 1);
    out.excess[size_t(n) + 1] = 0.5 * h.dot(eta.cwiseAbs2()) / (m * m);
  }
  return out;
}

Trajectory avgd_reference(GradientOracle& oracle,
                          const QuadraticProblem& problem,
                          const Eigen::VectorXd& theta0, double gamma,
                          std::int64_t N) {
  if (!(gamma > 0.0))
    throw std::invalid_argument("avgd_reference: gamma must be > 0");
  if (N < 1) throw std::invalid_argument("avgd_reference: horizon must be >= 1");
  Trajectory t;
  t.excess.assign(size_t(N) + 1, 0.0);
  t.theta_norm.assign(size_t(N) + 1, 0.0);
  t.excess[0] = problem.excess(theta0);
  t.theta_norm[0] = theta0.norm();
  t.excess[1] = t.excess[0];
  t.theta_norm[1] = t.theta_norm[0];
  Eigen::VectorXd psi = theta0;
  Eigen::VectorXd avg = theta0;
  for (std::int64_t n = 1; n < N; ++n) {
    psi -= gamma * oracle.query(psi, n + 1);
    avg += (psi - avg) / double(n + 1);
    if (!finite(avg)) {
      mark_diverged(t, n + 1, N);
      return t;
    }
    t.excess[size_t(n) + 1] = problem.excess(avg);
    t.theta_norm[size_t(n) + 1] = avg.norm();
    if (!std::isfinite(t.excess[size_t(n) + 1])) {
      mark_diverged(t, n + 1, N);
      return t;
    }
  }
  return t;
}

}  // namespace twostep
