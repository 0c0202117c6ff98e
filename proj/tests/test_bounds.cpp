#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "twostep/bounds.hpp"
#include "twostep/moment.hpp"
#include "twostep/spectral.hpp"

using namespace twostep;

TEST_CASE("iterate bound term selection") {
  BoundReport r = iterate_bound({1.0, 1.0}, 1.0, 1.0, 4);
  CHECK(r.value == doctest::Approx(2.0));  // min{2, 16, 4}
  CHECK(r.components.size() == 3);
  CHECK(r.preconditions_met);

  CHECK(iterate_bound({1.0, 1.0}, 1.0, 0.0, 4).value == 0.0);

  BoundReport averaged = iterate_bound({0.0, 1.0}, 1.0, 1.0, 2);
  CHECK(averaged.value == doctest::Approx(16.0));  // alpha = 0 drops a term
  CHECK(averaged.components.size() == 2);

  BoundReport bad = iterate_bound({1.5, 1.0}, 1.0, 1.0, 4);
  CHECK_FALSE(bad.preconditions_met);
  CHECK_FALSE(bad.violated.empty());
}

TEST_CASE("iterate bound dominates the closed form") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 200; ++t) {
    const double h = 0.3 + 1.7 * u(rng);
    const double alpha = (0.02 + 0.98 * u(rng)) / h;
    const double beta = (0.02 + 0.98 * u(rng)) * (2.0 / h - alpha);
    const StepPair pair{alpha, beta};
    EigenMode mode = classify(pair, h);
    const double eta1 = 2.0 * u(rng) - 1.0;
    for (std::int64_t n : {1, 3, 10, 100, 1000}) {
      const double eta = closed_form_eta(mode, eta1, n);
      BoundReport bound = iterate_bound(pair, h, eta1, n);
      REQUIRE(bound.preconditions_met);
      CHECK(eta * eta <= bound.value * (1.0 + 1e-9));
    }
  }
}

TEST_CASE("noiseless function bound") {
  BoundReport acc = function_bound_noiseless({1.0, 1.0}, 1.0, 1.0, 10);
  CHECK(acc.value == doctest::Approx(0.01));  // min{0.01, 0.2}
  BoundReport avgd = function_bound_noiseless({0.0, 1.0}, 1.0, 1.0, 10);
  CHECK(avgd.value == doctest::Approx(0.4));  // 4 r^2 L / n with gamma = 1/L
  CHECK(function_bound_noiseless({1.0, 1.0}, 1.0, 0.0, 10).value == 0.0);
}

TEST_CASE("unstructured noisy bound") {
  // (1/L, 1/L): first component r^2/N^2 + (N + 1)^2/N * trC grows with N.
  const double trc = 0.5;
  BoundReport r10 = function_bound_unstructured({1.0, 1.0}, 1.0, 1.0, trc, 10);
  REQUIRE(r10.components.size() == 2);
  CHECK(r10.components[0].value ==
        doctest::Approx(1.0 / 100.0 + 121.0 / 10.0 * trc));
  BoundReport r100 =
      function_bound_unstructured({1.0, 1.0}, 1.0, 1.0, trc, 100);
  CHECK(r100.components[0].value > r10.components[0].value);

  // trC = 0 reduces to the noiseless value.
  CHECK(function_bound_unstructured({0.3, 0.7}, 1.0, 1.0, 0.0, 50).value ==
        doctest::Approx(function_bound_noiseless({0.3, 0.7}, 1.0, 1.0, 50)
                            .value));

  // (0, 1/(L sqrt(N))): the classical 1/sqrt(N) trade-off.
  const std::int64_t N = 400;
  const double gamma = 1.0 / std::sqrt(double(N));
  BoundReport slow =
      function_bound_unstructured({0.0, gamma}, 1.0, 1.0, trc, N);
  CHECK(slow.value == doctest::Approx(4.0 / (gamma * N) + 4.0 * gamma * trc));
}

TEST_CASE("structured noisy bound") {
  const double trchi = 0.25;
  // (0, 1/L): second component 4 L r^2/N + 8 trCHinv/N.
  BoundReport avgd =
      function_bound_structured({0.0, 1.0}, 1.0, 1.0, trchi, 10);
  REQUIRE(!avgd.components.empty());
  CHECK(avgd.value == doctest::Approx(0.4 + 0.8 * trchi));
  CHECK(avgd.preconditions_met);

  // (1/(L N^a), 1/L): bias-variance trade-off scaling.
  const double a = 0.5;
  const std::int64_t N = 10000;
  const double alpha = 1.0 / std::pow(double(N), a);
  BoundReport traded =
      function_bound_structured({alpha, 1.0}, 1.0, 1.0, trchi, N);
  REQUIRE(traded.components.size() >= 1);
  const double first = traded.components[0].value;
  const double predicted = 1.0 / (alpha * double(N) * double(N)) +
                           std::pow(alpha * N + 1.0, 2.0) /
                               (alpha * double(N) * double(N)) * trchi;
  CHECK(first == doctest::Approx(predicted));

  // trCHinv = 0 falls back to the noiseless decay (L = 1 here).
  CHECK(function_bound_structured({0.5, 0.5}, 1.0, 1.0, 0.0, 100).value ==
        doctest::Approx(
            function_bound_noiseless({0.5, 0.5}, 1.0, 1.0, 100).value));

  // beta above 3/(2L) - alpha/2 breaks the precondition.
  CHECK_FALSE(
      function_bound_structured({0.5, 1.4}, 1.0, 1.0, trchi, 100)
          .preconditions_met);
}

TEST_CASE("horizon-tuned unstructured trade-off") {
  auto [pair, report] = tradeoff_bound_unstructured(1.0, 1.0, 100, 1.0);
  CHECK(pair.alpha == doctest::Approx(5e-4));
  CHECK(report.value == doctest::Approx(0.4002));

  auto [clean_pair, clean] = tradeoff_bound_unstructured(1.0, 0.0, 100, 1.0);
  CHECK(clean_pair.alpha == doctest::Approx(1.0));
  CHECK(clean.value == doctest::Approx(2e-4));

  // The guarantee holds for the moment engine at the returned pair.
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 50; ++t) {
    const int d = 2 + int(3.0 * u(rng));
    std::vector<double> eig;
    for (int i = 0; i < d - 1; ++i) eig.push_back(0.1 + 0.8 * u(rng));
    eig.push_back(1.0);  // L = 1
    auto inst = make_problem(eig, 1.0, 100 + t);
    const double trc = 0.05 + 0.5 * u(rng);
    const std::int64_t N = 50 + std::int64_t(450.0 * u(rng));
    auto [p, b] = tradeoff_bound_unstructured(1.0, trc, N, 1.0);
    NoiseSpec noise = NoiseSpec::isotropic(trc, d);
    const double e =
        expected_excess(inst.problem, inst.theta0, p, noise, N).value;
    CHECK(e <= b.value * (1.0 + 1e-9));
  }
}

TEST_CASE("horizon-tuned structured trade-off") {
  auto [pair, report] = tradeoff_bound_structured(1.0, 1.0, 100, 1.0);
  CHECK(pair.alpha == doctest::Approx(0.01));
  CHECK(pair.beta == doctest::Approx(1.0));
  CHECK(report.value == doctest::Approx(0.05));

  auto [clean_pair, clean] = tradeoff_bound_structured(1.0, 0.0, 100, 1.0);
  CHECK(clean.value == doctest::Approx(2e-4));
  CHECK(clean_pair.alpha == doctest::Approx(1.0));

  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 50; ++t) {
    const int d = 2 + int(3.0 * u(rng));
    std::vector<double> eig;
    for (int i = 0; i < d - 1; ++i) eig.push_back(0.1 + 0.8 * u(rng));
    eig.push_back(1.0);
    auto inst = make_problem(eig, 1.0, 200 + t);
    const double sigma2 = 0.05 + 0.5 * u(rng);
    const std::int64_t N = 50 + std::int64_t(450.0 * u(rng));
    NoiseSpec noise = NoiseSpec::structured(sigma2,
                                            inst.problem.eigenvalues());
    const double trchi = noise.trace_c_hinv(inst.problem.eigenvalues());
    auto [p, b] = tradeoff_bound_structured(1.0, trchi, N, 1.0);
    const double e =
        expected_excess(inst.problem, inst.theta0, p, noise, N).value;
    CHECK(e <= b.value * (1.0 + 1e-9));
  }
}

TEST_CASE("per-mode noise proposition dominates the variance term") {
  BoundReport zero = proposition_noise_bound({0.3, 0.5}, 1.0, 0.0, 10);
  CHECK(zero.value == 0.0);

  {
    EigenMode mode = classify({0.0, 1.0}, 1.0);
    const double variance =
        variance_term_closed_form(mode, 1.0, 10) / 100.0;
    CHECK(variance == doctest::Approx(0.09));
    BoundReport b = proposition_noise_bound({0.0, 1.0}, 1.0, 1.0, 10);
    CHECK(b.value >= variance * (1.0 - 1e-9));
  }

  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 200; ++t) {
    const double h = 0.3 + 1.7 * u(rng);
    const double alpha = (0.02 + 0.98 * u(rng)) / h;
    const double beta = (0.02 + 0.98 * u(rng)) * (2.0 / h - alpha);
    const StepPair pair{alpha, beta};
    const double c = 0.1 + u(rng);
    EigenMode mode = classify(pair, h);
    for (std::int64_t n : {5, 50, 500}) {
      const double variance =
          variance_term_closed_form(mode, c, n) / (double(n) * double(n));
      BoundReport b = proposition_noise_bound(pair, h, c, n);
      CHECK(variance <= b.value * (1.0 + 1e-9));
    }
  }
}

TEST_CASE("adversarial curvature formulas and limits") {
  CHECK(lower_bound_curvature_first(0.1, 100) ==
        doctest::Approx(M_PI * M_PI / (4.0 * 0.1 * 1e4)));
  CHECK(lower_bound_curvature_second(0.01, 1.0, 50) ==
        doctest::Approx(2.0 / (50.0 * 1.01) + 0.04 / (1.01 * 1.01)));
  CHECK(second_lower_limit_constant() ==
        doctest::Approx(std::pow(1.0 - std::exp(-2.0), 2.0) / 4.0));

  // First family: alpha n^2 excess approaches r^2/2 = 0.5 from below.
  {
    const double alpha = 0.1;
    const std::int64_t n = 20000;
    const double h = lower_bound_curvature_first(alpha, n);
    double eta = 1.0, prev = 0.0;
    for (std::int64_t k = 1; k < n; ++k) {
      const double next =
          (2.0 - 2.0 * alpha * h) * eta - (1.0 - alpha * h) * prev;
      prev = eta;
      eta = next;
    }
    const double excess = 0.5 * h * eta * eta / (double(n) * double(n));
    CHECK(alpha * double(n) * double(n) * excess ==
          doctest::Approx(0.5).epsilon(0.05));
  }
}

TEST_CASE("energy is monotone in the stated momentum window") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 100; ++t) {
    const double alpha = u(rng);
    const double s = std::sqrt(1.0 - alpha);
    const double beta = (1.0 - s) + 2.0 * s * (0.02 + 0.96 * u(rng));
    double eta = 2.0 * u(rng) - 1.0, prev = 0.0;
    double energy = lyapunov_energy(alpha, eta, prev);
    for (int n = 1; n <= 200; ++n) {
      const double next =
          (2.0 - (alpha + beta)) * eta - (1.0 - beta) * prev;
      prev = eta;
      eta = next;
      const double current = lyapunov_energy(alpha, eta, prev);
      CHECK(current <= energy + 1e-10 * std::max(1.0, std::abs(energy)));
      energy = current;
    }
  }
}

TEST_CASE("quadratic form contracts by exactly one minus beta") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 100; ++t) {
    const double alpha = u(rng);
    const double beta = alpha * u(rng);
    const StepPair pair{alpha, beta};
    double eta = 2.0 * u(rng) - 1.0, prev = 0.0;
    double g = lyapunov_contraction(pair, eta, prev);
    for (int n = 1; n <= 100; ++n) {
      const double next =
          (2.0 - (alpha + beta)) * eta - (1.0 - beta) * prev;
      prev = eta;
      eta = next;
      const double current = lyapunov_contraction(pair, eta, prev);
      CHECK(std::abs(current - (1.0 - beta) * g) <=
            1e-10 * std::max(1.0, std::abs(g)));
      g = current;
    }
  }
}
