#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>

#include "twostep/moment.hpp"
#include "twostep/oracle.hpp"
#include "twostep/recursion.hpp"

using namespace twostep;

TEST_CASE("noiseless propagation stays rank one") {
  const StepPair pair{0.3, 0.5};
  Eigen::Matrix2d M;
  M << 1.0, 0.0, 0.0, 0.0;  // Theta_1 = (1, 0) deterministically
  for (std::int64_t n = 1; n <= 200; ++n) {
    M = moment_step(M, pair, 1.0, 0.0, n);
    const double det = M(0, 0) * M(1, 1) - M(0, 1) * M(1, 0);
    CHECK(std::abs(det) <= 1e-12 * std::max(1.0, M(0, 0) * M(1, 1)));
  }
}

TEST_CASE("pure averaging accumulates a random walk") {
  // (alpha, beta) = (0, 1), h = 1: eta_{n+1} = eta_n + eps, so
  // E eta_n^2 = eta_1^2 + (n - 1) sigma^2.
  const double sigma2 = 0.7, eta1 = 1.3;
  for (std::int64_t n : {1, 2, 5, 10, 100}) {
    CHECK(mode_second_moment({0.0, 1.0}, 1.0, sigma2, eta1, n) ==
          doctest::Approx(eta1 * eta1 + double(n - 1) * sigma2));
  }
}

TEST_CASE("symmetry and positive semi-definiteness are preserved") {
  const StepPair pair{0.05, 0.8};
  Eigen::Matrix2d M;
  M << 2.0, 0.0, 0.0, 0.0;
  for (std::int64_t n = 1; n <= 10000; ++n) {
    M = moment_step(M, pair, 1.0, 0.3, n);
    CHECK(std::abs(M(0, 1) - M(1, 0)) <= 1e-12 * std::max(1.0, M.norm()));
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(M);
    CHECK(es.eigenvalues().minCoeff() >= -1e-10 * std::max(1.0, M.norm()));
  }
}

TEST_CASE("zero noise reproduces the closed form") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 50; ++t) {
    const double h = 0.3 + 1.4 * u(rng);
    const double alpha = (0.05 + 0.9 * u(rng)) / h;
    const double beta = (0.05 + 0.9 * u(rng)) * (2.0 / h - alpha);
    const StepPair pair{alpha, beta};
    EigenMode mode = classify(pair, h);
    const double eta1 = 2.0 * u(rng) - 1.0;
    for (std::int64_t n : {2, 5, 20, 100}) {
      const double exact = closed_form_eta(mode, eta1, n);
      const double second = mode_second_moment(pair, h, 0.0, eta1, n);
      CHECK(second ==
            doctest::Approx(exact * exact).epsilon(1e-9));
    }
  }
}

TEST_CASE("averaging-with-noise worked example") {
  auto inst = make_problem({1.0}, 1.0, 1);
  NoiseSpec noise = NoiseSpec::structured(1.0, inst.problem.eigenvalues());
  // Start at the optimum: eta_1 = 0, N = 10 -> E f - f_* = 9/200.
  ExpectedExcess e = expected_excess(inst.problem, inst.problem.optimum(),
                                     {0.0, 1.0}, noise, 10);
  CHECK(e.value == doctest::Approx(0.045));
  CHECK_FALSE(e.diverged);
}

TEST_CASE("averaged descent variance decays like 1/N") {
  auto inst = make_problem(spectrum_power_law(4, 2), 1.0, 2);
  const double L = inst.problem.largest();
  NoiseSpec noise = NoiseSpec::structured(1.0, inst.problem.eigenvalues());
  const double e3 = expected_excess(inst.problem, inst.problem.optimum(),
                                    {0.0, 1.0 / L}, noise, 1000)
                        .value;
  const double e4 = expected_excess(inst.problem, inst.problem.optimum(),
                                    {0.0, 1.0 / L}, noise, 10000)
                        .value;
  const double slope = std::log10(e4 / e3);  // one decade apart
  CHECK(slope == doctest::Approx(-1.0).epsilon(0.15));
}

TEST_CASE("bias and variance sum to the total") {
  auto inst = make_problem(spectrum_power_law(5, 2), 1.5, 3);
  Eigen::VectorXd c(5);
  c << 0.2, 0.1, 0.4, 0.05, 0.3;
  NoiseSpec noise = NoiseSpec::unstructured(c);
  const StepPair pair{0.4, 0.6};
  for (std::int64_t N : {10, 100, 1000}) {
    BiasVarianceSplit split =
        bias_variance_split(inst.problem, inst.theta0, pair, noise, N);
    const double total =
        expected_excess(inst.problem, inst.theta0, pair, noise, N).value;
    CHECK(split.bias + split.variance ==
          doctest::Approx(total).epsilon(1e-10));
  }
  BiasVarianceSplit none = bias_variance_split(
      inst.problem, inst.theta0, pair, NoiseSpec::none(), 100);
  CHECK(none.variance == 0.0);
  BiasVarianceSplit centered = bias_variance_split(
      inst.problem, inst.problem.optimum(), pair, noise, 100);
  CHECK(centered.bias == doctest::Approx(0.0));
}

TEST_CASE("closed-form variance term") {
  EigenMode averaging = classify({0.0, 1.0}, 1.0);
  CHECK(variance_term_closed_form(averaging, 1.0, 1) == 0.0);
  CHECK(variance_term_closed_form(averaging, 1.0, 10) == doctest::Approx(9.0));

  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 100; ++t) {
    const double h = 0.3 + 1.4 * u(rng);
    const double alpha = (0.05 + 0.9 * u(rng)) / h;
    const double beta = (0.05 + 0.9 * u(rng)) * (2.0 / h - alpha);
    const StepPair pair{alpha, beta};
    const double c = 0.1 + u(rng);
    EigenMode mode = classify(pair, h);
    for (std::int64_t n : {2, 10, 50, 200}) {
      const double closed = variance_term_closed_form(mode, c, n);
      // The closed form carries the eigenvalue weight: it is 2n^2 times the
      // mode's contribution to the expected excess, i.e. h * E[eta_n^2].
      const double recursion = h * mode_second_moment(pair, h, c, 0.0, n);
      CHECK(closed == doctest::Approx(recursion).epsilon(1e-8));
    }
  }
}

TEST_CASE("summed unit responses respect the stated cap") {
  // sum_k eta_k(unit)^2 <= (2 - beta h)/(4 alpha beta h^2 (1 - (alpha/4 +
  // beta/2) h)) for 0 < alpha <= 1/h, 0 < beta <= 2/h - alpha.
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 200; ++t) {
    const double h = 0.3 + 1.7 * u(rng);
    const double alpha = (0.01 + 0.99 * u(rng)) / h;
    const double beta = (0.01 + 0.99 * u(rng)) * (2.0 / h - alpha);
    const StepPair pair{alpha, beta};
    double eta = 1.0, prev = 0.0, sum = 0.0;
    for (int n = 1; n <= 200000; ++n) {
      sum += eta * eta;
      const double next =
          (2.0 - (alpha + beta) * h) * eta - (1.0 - beta * h) * prev;
      prev = eta;
      eta = next;
      if (n > 100 && eta * eta + prev * prev <= 1e-16 * sum) break;
    }
    const double cap =
        (2.0 - beta * h) /
        (4.0 * alpha * beta * h * h *
         (1.0 - (alpha / 4.0 + beta / 2.0) * h));
    CHECK(sum <= cap * (1.0 + 1e-9));
  }
}

TEST_CASE("Monte Carlo agrees with the exact second moment") {
  auto inst = make_problem(spectrum_power_law(3, 2), 1.0, 13);
  Eigen::VectorXd c = Eigen::VectorXd::Constant(3, 0.2);
  NoiseSpec noise = NoiseSpec::unstructured(c);
  const StepPair pair{0.3, 0.5};
  const std::int64_t N = 200;
  const int reps = 500;
  double sum = 0.0, sum_sq = 0.0;
  for (int rep = 0; rep < reps; ++rep) {
    auto oracle = additive_noise_oracle(inst.problem, c, 1000 + rep);
    Trajectory t = run(*oracle, inst.problem, inst.theta0, pair, N);
    sum += t.excess[size_t(N)];
    sum_sq += t.excess[size_t(N)] * t.excess[size_t(N)];
  }
  const double mean = sum / reps;
  const double var = (sum_sq - reps * mean * mean) / (reps - 1);
  const double se = std::sqrt(var / reps);
  const double exact =
      expected_excess(inst.problem, inst.theta0, pair, noise, N).value;
  CHECK(std::abs(mean - exact) <= 4.0 * se);
}

TEST_CASE("divergence is reported, not thrown") {
  auto inst = make_problem({1.0}, 1.0, 17);
  NoiseSpec noise = NoiseSpec::isotropic(1.0, 1);
  ExpectedExcess e =
      expected_excess(inst.problem, inst.theta0, {3.0, 3.0}, noise, 2000);
  CHECK(e.diverged);
  CHECK(e.first_bad >= 1);
}

TEST_CASE("expected-excess CSV schema") {
  auto inst = make_problem(spectrum_power_law(3, 2), 1.0, 19);
  NoiseSpec noise = NoiseSpec::isotropic(0.5, 3);
  const std::string path = "test_moment_curve.csv";
  write_expected_excess_csv(inst.problem, inst.theta0, {0.2, 0.4}, noise,
                            {10, 100, 1000}, path);
  std::ifstream in(path);
  std::string header;
  REQUIRE(std::getline(in, header));
  CHECK(header == "N,total,bias,variance");
  int rows = 0;
  std::string line;
  while (std::getline(in, line))
    if (!line.empty()) ++rows;
  CHECK(rows == 3);
  in.close();
  std::remove(path.c_str());
}
