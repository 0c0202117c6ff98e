#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>

#include "twostep/oracle.hpp"
#include "twostep/recursion.hpp"
#include "twostep/spectral.hpp"

using namespace twostep;

TEST_CASE("discriminant values") {
  CHECK(discriminant({0.1, 0.1}, 1.0) == doctest::Approx(-0.09));
  CHECK(discriminant({0.1, 0.0}, 1.0) == doctest::Approx(-0.0975));
  // alpha = 0: always a perfect square (beta h / 2)^2
  for (double beta : {0.1, 0.7, 1.9}) {
    CHECK(discriminant({0.0, beta}, 1.0) ==
          doctest::Approx(beta * beta / 4.0));
  }
}

TEST_CASE("classification of the named regimes") {
  EigenMode co = classify({0.25, 0.75}, 1.0);
  CHECK(co.cls == RootClass::Coalescing);
  CHECK(co.r_double == doctest::Approx(0.5));

  EigenMode re = classify({0.0, 0.5}, 1.0);
  CHECK(re.cls == RootClass::RealDistinct);
  CHECK(re.r_plus == doctest::Approx(1.0));
  CHECK(re.r_minus == doctest::Approx(0.5));

  EigenMode cp = classify({0.1, 0.1}, 1.0);
  CHECK(cp.cls == RootClass::ComplexPair);
  CHECK(cp.rho == doctest::Approx(std::sqrt(0.9)));
}

TEST_CASE("stability of the boundary families") {
  for (double g : {0.1, 1.0, 1.9})
    CHECK(stability_region({0.0, g}, 1.0) == Stability::MarginallyStable);
  for (double g : {0.1, 2.0, 3.9})
    CHECK(stability_region({g, 0.0}, 1.0) == Stability::MarginallyStable);
  CHECK(stability_region({1.0, 2.1}, 1.0) == Stability::Unstable);
  CHECK(stability_region({0.5, 0.5}, 1.0) == Stability::StrictlyStable);
}

TEST_CASE("roots satisfy the characteristic polynomial") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 300; ++t) {
    const double h = 0.3 + 1.7 * u(rng);
    const StepPair pair{1.2 * u(rng), 2.0 * u(rng)};
    EigenMode mode = classify(pair, h);
    const double p = 1.0 - pair.beta * h;  // product of the roots
    if (mode.cls == RootClass::RealDistinct) {
      for (double root : {mode.r_plus, mode.r_minus})
        CHECK(std::abs(root * root - 2.0 * mode.r * root + p) <= 1e-12);
      CHECK(mode.r_plus * mode.r_minus == doctest::Approx(p).epsilon(1e-12));
    } else if (mode.cls == RootClass::ComplexPair) {
      // rho e^{i omega}: real and imaginary parts of the polynomial
      const double re = mode.rho * std::cos(mode.omega);
      const double im = mode.rho * std::sin(mode.omega);
      CHECK(std::abs(re * re - im * im - 2.0 * mode.r * re + p) <= 1e-12);
      CHECK(std::abs(2.0 * re * im - 2.0 * mode.r * im) <= 1e-12);
      CHECK(mode.rho * mode.rho == doctest::Approx(p).epsilon(1e-12));
    } else {
      // double root within the coalescing tolerance of the exact roots
      const double res = mode.r_double * mode.r_double -
                         2.0 * mode.r * mode.r_double + p;
      CHECK(std::abs(res) <= coalescing_tol(pair, h) + 1e-12);
    }
  }
}

TEST_CASE("closed-form eta hand values") {
  EigenMode re = classify({0.0, 0.5}, 1.0);
  CHECK(closed_form_eta(re, 1.0, 1) == doctest::Approx(1.0));
  CHECK(closed_form_eta(re, 1.0, 3) == doctest::Approx(1.75));
  for (std::int64_t n = 1; n <= 12; ++n)
    CHECK(closed_form_eta(re, 1.0, n) ==
          doctest::Approx(2.0 * (1.0 - std::pow(0.5, double(n)))));

  EigenMode co = classify({0.25, 0.75}, 1.0);
  CHECK(closed_form_eta(co, 1.0, 3) == doctest::Approx(0.75));

  EigenMode cp = classify({0.1, 0.1}, 1.0);
  CHECK(closed_form_eta(cp, 2.5, 1) == doctest::Approx(2.5));
}

TEST_CASE("strictly stable modes decay at the max root modulus") {
  EigenMode mode = classify({0.1, 1.5}, 1.0);
  REQUIRE(mode.cls == RootClass::RealDistinct);
  const double ratio = closed_form_eta(mode, 1.0, 501) /
                       closed_form_eta(mode, 1.0, 500);
  CHECK(ratio == doctest::Approx(mode.r_plus).epsilon(1e-6));
  CHECK(mode.max_root_modulus == doctest::Approx(std::abs(mode.r_plus)));
}

TEST_CASE("boundary consistency as the discriminant vanishes") {
  // Fix alpha and move beta so that Delta = +-1e-10; the forced real and
  // complex evaluations must agree with the coalescing formula.
  const double alpha = 0.25, h = 1.0;
  for (double delta : {1e-10, -1e-10}) {
    const double beta = 2.0 * std::sqrt(alpha + delta) - alpha;
    const StepPair pair{alpha, beta};
    CHECK(discriminant(pair, h) == doctest::Approx(delta).epsilon(1e-3));
    EigenMode forced = classify(pair, h, 0.0);  // exact-sign classification
    CHECK(forced.cls == (delta > 0.0 ? RootClass::RealDistinct
                                     : RootClass::ComplexPair));
    EigenMode coalesced = classify(pair, h, 1.0);  // forced double root
    REQUIRE(coalesced.cls == RootClass::Coalescing);
    for (std::int64_t n = 1; n <= 100; ++n) {
      const double a = closed_form_eta(forced, 1.0, n);
      const double b = closed_form_eta(coalesced, 1.0, n);
      CHECK(std::abs(a - b) <= 1e-6);
    }
  }
}

TEST_CASE("closed-form excess matches the recursion") {
  auto inst = make_problem(spectrum_power_law(5, 2), 1.0, 11);
  auto oracle = exact_oracle(inst.problem);
  const StepPair pair{0.3, 0.4};
  Trajectory t = run(*oracle, inst.problem, inst.theta0, pair, 1000);
  CHECK(closed_form_excess(inst.problem, inst.problem.optimum(), pair, 100) ==
        doctest::Approx(0.0));
  for (std::int64_t n = 2; n <= 1000; ++n) {
    const double cf = closed_form_excess(inst.problem, inst.theta0, pair, n);
    CHECK(cf == doctest::Approx(t.excess[size_t(n)]).epsilon(1e-9));
  }
}

TEST_CASE("stability map cells and CSV output") {
  std::vector<double> alphas{0.0, 0.2, 1.0, 2.0, 4.0};
  std::vector<double> betas{0.0, 0.1, 1.0, 1.5};
  auto cells = stability_map(alphas, betas, 1.0);
  REQUIRE(cells.size() == alphas.size() * betas.size());

  auto at = [&](double a, double b) -> const StabilityCell& {
    for (const auto& cell : cells)
      if (cell.alpha == a && cell.beta == b) return cell;
    REQUIRE(false);
    return cells[0];
  };

  CHECK(at(1.0, 1.0).cls == RootClass::Coalescing);  // Delta = 0 exactly
  CHECK(at(2.0, 1.5).stability == Stability::Unstable);
  CHECK(at(0.2, 0.1).cls == RootClass::ComplexPair);
  CHECK(at(0.2, 0.1).stability == Stability::StrictlyStable);
  CHECK(at(0.0, 0.0).stability == Stability::MarginallyStable);
  CHECK(at(4.0, 0.0).stability == Stability::MarginallyStable);

  const std::string path = "test_spectral_map.csv";
  write_stability_csv(cells, path);
  std::ifstream in(path);
  std::string header;
  REQUIRE(std::getline(in, header));
  CHECK(header == "alpha,beta,class,stability,max_root_modulus");
  std::string body((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  CHECK(body.find("complex_pair") != std::string::npos);
  CHECK(body.find("strictly_stable") != std::string::npos);
  CHECK(body.find("unstable") != std::string::npos);
  in.close();
  std::remove(path.c_str());
}
