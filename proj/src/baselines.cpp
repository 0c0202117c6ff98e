#include "twostep/baselines.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace twostep {

namespace {

void init_run(BaselineRun& run, const QuadraticProblem& problem,
              const Eigen::VectorXd& start, std::int64_t N) {
  if (N < 1) throw std::invalid_argument("baseline horizon must be >= 1");
  run.trajectory.excess.assign(size_t(N) + 1, 0.0);
  run.trajectory.theta_norm.assign(size_t(N) + 1, 0.0);
  run.iterates.assign(size_t(N) + 1, start);
  run.trajectory.excess[0] = problem.excess(start);
  run.trajectory.theta_norm[0] = start.norm();
  run.trajectory.excess[1] = run.trajectory.excess[0];
  run.trajectory.theta_norm[1] = run.trajectory.theta_norm[0];
}

// Records entry n; returns false when the run just diverged.
bool record(BaselineRun& run, const QuadraticProblem& problem,
            const Eigen::VectorXd& iterate, std::int64_t n, std::int64_t N) {
  const double excess = iterate.allFinite()
                            ? problem.excess(iterate)
                            : std::numeric_limits<double>::quiet_NaN();
  if (!std::isfinite(excess)) {
    run.trajectory.diverged = true;
    run.trajectory.first_bad = n;
    for (std::int64_t k = n; k <= N; ++k) {
      run.trajectory.excess[size_t(k)] =
          std::numeric_limits<double>::infinity();
      run.trajectory.theta_norm[size_t(k)] =
          std::numeric_limits<double>::infinity();
    }
    return false;
  }
  run.iterates[size_t(n)] = iterate;
  run.trajectory.excess[size_t(n)] = excess;
  run.trajectory.theta_norm[size_t(n)] = iterate.norm();
  return true;
}

}  // namespace

BaselineRun run_acsa(const AcsaConfig& config, GradientOracle& oracle,
                     const QuadraticProblem& problem,
                     const Eigen::VectorXd& x1, std::int64_t N) {
  BaselineRun run;
  init_run(run, problem, x1, N);
  Eigen::VectorXd x = x1;      // x_n
  Eigen::VectorXd x_ag = x1;   // x_n^{ag}
  for (std::int64_t n = 1; n < N; ++n) {
    const double beta = config.beta(n);
    if (!(beta >= 1.0))
      throw std::invalid_argument("AC-SA requires beta_n >= 1");
    const double inv = 1.0 / beta;
    const Eigen::VectorXd x_md = inv * x + (1.0 - inv) * x_ag;
    const Eigen::VectorXd g = oracle.query(x_md, n + 1);
    x -= config.gamma(n) * g;
    x_ag = inv * x + (1.0 - inv) * x_ag;
    if (!record(run, problem, x_ag, n + 1, N)) break;
  }
  return run;
}

BaselineRun run_sage(const SageConfig& config, GradientOracle& oracle,
                     const QuadraticProblem& problem,
                     const Eigen::VectorXd& y0, std::int64_t N) {
  BaselineRun run;
  init_run(run, problem, y0, N);
  Eigen::VectorXd y = y0;
  Eigen::VectorXd z = y0;
  for (std::int64_t n = 1; n < N; ++n) {
    const double alpha = config.alpha(n);
    if (!(alpha > 0.0 && alpha <= 1.0))
      throw std::invalid_argument("SAGE requires alpha_n in (0, 1]");
    const double L = config.smoothness(n);
    if (!(L > 0.0)) throw std::invalid_argument("SAGE requires L_n > 0");
    const Eigen::VectorXd x = (1.0 - alpha) * y + alpha * z;
    const Eigen::VectorXd g = oracle.query(x, n + 1);
    y = x - g / L;
    z -= g / (alpha * L);
    if (!record(run, problem, y, n + 1, N)) break;
  }
  return run;
}

BaselineRun run_accrda(const AccRdaConfig& config, GradientOracle& oracle,
                       const QuadraticProblem& problem,
                       const Eigen::VectorXd& w0, std::int64_t N) {
  BaselineRun run;
  init_run(run, problem, w0, N);
  Eigen::VectorXd w = w0;
  const Eigen::VectorXd v0 = w0;
  Eigen::VectorXd v = w0;
  Eigen::VectorXd gbar = Eigen::VectorXd::Zero(problem.dim());
  double A = 0.0;
  for (std::int64_t n = 1; n < N; ++n) {
    const double alpha = config.alpha(n);
    if (!(alpha > 0.0))
      throw std::invalid_argument("Acc-RDA requires alpha_n > 0");
    A += alpha;
    const double tau = alpha / A;
    const Eigen::VectorXd u = (1.0 - tau) * w + tau * v;
    const Eigen::VectorXd g = oracle.query(u, n + 1);
    gbar = (1.0 - tau) * gbar + tau * g;
    v = v0 - (A / (config.L + config.beta(n))) * gbar;
    w = (1.0 - tau) * w + tau * v;
    if (!record(run, problem, w, n + 1, N)) break;
  }
  return run;
}

TwoStepCoefficients reduce_to_unified(const AcsaConfig& config,
                                      std::int64_t n) {
  if (n < 1) throw std::invalid_argument("reduce_to_unified: n must be >= 1");
  const double beta = config.beta(n);
  const double beta_prev = n >= 2 ? config.beta(n - 1) : 1.0;
  return {config.gamma(n) / beta, (beta_prev - 1.0) / beta};
}

TwoStepCoefficients reduce_to_unified(const SageConfig& config,
                                      std::int64_t n) {
  if (n < 1) throw std::invalid_argument("reduce_to_unified: n must be >= 1");
  const double delta = 1.0 / config.smoothness(n);
  if (n == 1) return {delta, 0.0};
  const double a_prev = config.alpha(n - 1);
  return {delta, (1.0 - a_prev) * config.alpha(n) / a_prev};
}

TwoStepCoefficients reduce_to_unified(const AccRdaConfig& config,
                                      std::int64_t n) {
  if (n < 1) throw std::invalid_argument("reduce_to_unified: n must be >= 1");
  if (std::abs(config.beta(n) - config.beta(1)) > 0.0)
    throw std::invalid_argument(
        "Acc-RDA reduction requires a constant beta schedule");
  double A_prev2 = 0.0, A_prev = 0.0, A = 0.0;
  for (std::int64_t k = 1; k <= n; ++k) {
    A_prev2 = A_prev;
    A_prev = A;
    A += config.alpha(k);
  }
  const double alpha = config.alpha(n);
  const double delta = alpha * alpha / (A * (config.L + config.beta(n)));
  if (n == 1) return {delta, 0.0};
  return {delta, alpha * A_prev2 / (config.alpha(n - 1) * A)};
}

BaselineRun run_reduced_two_step(
    const std::function<TwoStepCoefficients(std::int64_t)>& coeffs,
    GradientOracle& oracle, const QuadraticProblem& problem,
    const Eigen::VectorXd& theta0, std::int64_t N) {
  BaselineRun run;
  init_run(run, problem, theta0, N);
  Eigen::VectorXd prev = theta0;
  Eigen::VectorXd cur = theta0;
  for (std::int64_t n = 1; n < N; ++n) {
    const TwoStepCoefficients c = coeffs(n);
    const Eigen::VectorXd y = cur + c.momentum * (cur - prev);
    Eigen::VectorXd next = y - c.delta * oracle.query(y, n + 1);
    prev = std::move(cur);
    cur = std::move(next);
    if (!record(run, problem, cur, n + 1, N)) break;
  }
  return run;
}

AcsaConfig acsa_optimal(double L, double r, double trace_C) {
  if (!(L > 0.0 && r > 0.0 && trace_C >= 0.0))
    throw std::invalid_argument("acsa_optimal: bad inputs");
  AcsaConfig config;
  config.beta = [](std::int64_t n) { return 0.5 * double(n + 1); };
  config.gamma = [=](std::int64_t n) {
    double delta = 1.0 / L;
    if (trace_C > 0.0)
      delta = std::min(delta, r / (2.0 * std::sqrt(trace_C) *
                                   std::pow(double(n + 1), 1.5)));
    return 0.5 * double(n + 1) * delta;
  };
  return config;
}

SageConfig sage_optimal(double L, double r, double trace_C) {
  if (!(L > 0.0 && r > 0.0 && trace_C >= 0.0))
    throw std::invalid_argument("sage_optimal: bad inputs");
  SageConfig config;
  config.alpha = [](std::int64_t n) { return 2.0 / double(n + 2); };
  config.smoothness = [=](std::int64_t n) {
    return L + (trace_C > 0.0
                    ? std::sqrt(trace_C) / r * std::pow(double(n), 1.5)
                    : 0.0);
  };
  return config;
}

AccRdaConfig accrda_optimal(double L, double r, double trace_C) {
  if (!(L > 0.0 && r > 0.0 && trace_C >= 0.0))
    throw std::invalid_argument("accrda_optimal: bad inputs");
  AccRdaConfig config;
  config.L = L;
  config.alpha = [](std::int64_t n) { return 0.5 * double(n); };
  config.beta = [=](std::int64_t n) {
    return trace_C > 0.0 ? std::sqrt(trace_C) / r * std::pow(double(n), 1.5)
                         : 0.0;
  };
  return config;
}

AccRdaConfig accrda_constant_beta(double L, double beta) {
  if (!(L > 0.0 && beta >= 0.0))
    throw std::invalid_argument("accrda_constant_beta: bad inputs");
  AccRdaConfig config;
  config.L = L;
  config.alpha = [](std::int64_t n) { return 0.5 * double(n); };
  config.beta = [=](std::int64_t) { return beta; };
  return config;
}

}  // namespace twostep
