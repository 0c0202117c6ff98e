#include "twostep/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "twostep/spectral.hpp"

namespace twostep {

namespace {

void check_triangle(BoundReport& report, const StepPair& pair, double scale,
                    double beta_cap) {
  if (pair.alpha < 0.0) {
    report.preconditions_met = false;
    report.violated = "alpha >= 0";
  } else if (pair.alpha > 1.0 / scale) {
    report.preconditions_met = false;
    report.violated = "alpha <= 1/L";
  } else if (pair.beta < 0.0) {
    report.preconditions_met = false;
    report.violated = "beta >= 0";
  } else if (pair.beta > beta_cap) {
    report.preconditions_met = false;
    report.violated = "beta cap";
  }
}

void finish_min(BoundReport& report) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& c : report.components) best = std::min(best, c.value);
  report.value = best;
}

void finish_max(BoundReport& report) {
  double best = 0.0;
  for (const auto& c : report.components) best = std::max(best, c.value);
  report.value = best;
}

}  // namespace

BoundReport iterate_bound(const StepPair& pair, double h, double eta1,
                          std::int64_t n) {
  if (!(h > 0.0)) throw std::invalid_argument("iterate_bound: h must be > 0");
  if (n < 1) throw std::invalid_argument("iterate_bound: n must be >= 1");
  BoundReport report;
  check_triangle(report, pair, h, 2.0 / h - pair.alpha);
  const double e2 = eta1 * eta1;
  const double sum = pair.alpha + pair.beta;
  if (pair.alpha > 0.0)
    report.components.push_back({"2 eta1^2/(alpha h)",
                                 2.0 * e2 / (pair.alpha * h)});
  if (sum > 0.0) {
    report.components.push_back(
        {"8 eta1^2 n/((alpha+beta) h)", 8.0 * e2 * double(n) / (sum * h)});
    report.components.push_back(
        {"16 eta1^2/((alpha+beta)^2 h^2)", 16.0 * e2 / (sum * sum * h * h)});
  }
  finish_min(report);
  return report;
}

BoundReport function_bound_noiseless(const StepPair& pair, double L, double r,
                                     std::int64_t n) {
  if (!(L > 0.0))
    throw std::invalid_argument("function_bound_noiseless: L must be > 0");
  if (n < 1)
    throw std::invalid_argument("function_bound_noiseless: n must be >= 1");
  BoundReport report;
  check_triangle(report, pair, L, 2.0 / L - pair.alpha);
  const double r2 = r * r;
  const double sum = pair.alpha + pair.beta;
  if (pair.alpha > 0.0)
    report.components.push_back(
        {"r^2/(alpha n^2)", r2 / (pair.alpha * double(n) * double(n))});
  if (sum > 0.0)
    report.components.push_back(
        {"4 r^2/((alpha+beta) n)", 4.0 * r2 / (sum * double(n))});
  finish_min(report);
  return report;
}

BoundReport function_bound_unstructured(const StepPair& pair, double L,
                                        double r, double trace_C,
                                        std::int64_t N) {
  if (!(L > 0.0))
    throw std::invalid_argument("function_bound_unstructured: L must be > 0");
  if (N < 1)
    throw std::invalid_argument("function_bound_unstructured: N must be >= 1");
  BoundReport report;
  check_triangle(report, pair, L, 2.0 / L - pair.alpha);
  const double r2 = r * r;
  const double n = double(N);
  const double sum = pair.alpha + pair.beta;
  const double mix = pair.alpha * n + pair.beta;
  if (pair.alpha > 0.0)
    report.components.push_back(
        {"bias/alpha + variance/alpha",
         r2 / (pair.alpha * n * n) + mix * mix * trace_C / (pair.alpha * n)});
  if (sum > 0.0)
    report.components.push_back(
        {"bias/(alpha+beta) + variance/(alpha+beta)",
         4.0 * r2 / (sum * n) + 4.0 * mix * mix * trace_C / sum});
  finish_min(report);
  return report;
}

BoundReport function_bound_structured(const StepPair& pair, double L, double r,
                                      double trace_C_Hinv, std::int64_t N) {
  if (!(L > 0.0))
    throw std::invalid_argument("function_bound_structured: L must be > 0");
  if (N < 1)
    throw std::invalid_argument("function_bound_structured: N must be >= 1");
  BoundReport report;
  check_triangle(report, pair, L, 1.5 / L - 0.5 * pair.alpha);
  const double r2 = r * r;
  const double n = double(N);
  const double sum = pair.alpha + pair.beta;
  const double mix = pair.alpha * n + pair.beta;
  if (pair.alpha > 0.0 && pair.beta > 0.0)
    report.components.push_back(
        {"averaging-regime term",
         r2 / (n * n * pair.alpha) +
             mix * mix * trace_C_Hinv / (pair.alpha * pair.beta * n * n)});
  if (sum > 0.0)
    report.components.push_back(
        {"acceleration-regime term",
         4.0 * L * r2 / (sum * n) +
             8.0 * mix * mix * trace_C_Hinv / (sum * sum * n)});
  finish_min(report);
  return report;
}

std::pair<StepPair, BoundReport> tradeoff_bound_unstructured(double r,
                                                             double trace_C,
                                                             std::int64_t N,
                                                             double L) {
  if (!(r > 0.0 && L > 0.0 && trace_C >= 0.0 && N >= 1))
    throw std::invalid_argument("tradeoff_bound_unstructured: bad inputs");
  Schedule s;
  s.kind = ScheduleKind::OptimalUnstructured;
  NoiseSummary summary;
  summary.trace_c = trace_C;
  const StepPair pair = resolve_schedule(s, L, r, summary, int(N));
  BoundReport report;
  const double n = double(N);
  report.components.push_back({"2 L r^2/N^2", 2.0 * L * r * r / (n * n)});
  report.components.push_back(
      {"4 sqrt(trC) r/sqrt(N)", 4.0 * std::sqrt(trace_C) * r / std::sqrt(n)});
  report.value = report.components[0].value + report.components[1].value;
  return {pair, report};
}

std::pair<StepPair, BoundReport> tradeoff_bound_structured(double r,
                                                           double trace_C_Hinv,
                                                           std::int64_t N,
                                                           double L) {
  if (!(r > 0.0 && L > 0.0 && trace_C_Hinv >= 0.0 && N >= 1))
    throw std::invalid_argument("tradeoff_bound_structured: bad inputs");
  Schedule s;
  s.kind = ScheduleKind::OptimalStructured;
  NoiseSummary summary;
  summary.trace_c_hinv = trace_C_Hinv;
  const StepPair pair = resolve_schedule(s, L, r, summary, int(N));
  BoundReport report;
  const double n = double(N);
  report.components.push_back({"5 trCHinv/N", 5.0 * trace_C_Hinv / n});
  report.components.push_back(
      {"5 sqrt(trCHinv L) r/N",
       5.0 * std::sqrt(trace_C_Hinv * L) * r / n});
  report.components.push_back({"2 r^2 L/N^2", 2.0 * r * r * L / (n * n)});
  finish_max(report);
  return {pair, report};
}

double lower_bound_curvature_first(double alpha_n, std::int64_t n) {
  if (!(alpha_n > 0.0))
    throw std::invalid_argument("lower_bound_curvature_first: alpha must be > 0");
  if (n < 1)
    throw std::invalid_argument("lower_bound_curvature_first: n must be >= 1");
  const double pi = std::acos(-1.0);
  return pi * pi / (4.0 * alpha_n * double(n) * double(n));
}

double lower_bound_curvature_second(double alpha_n, double beta_n,
                                    std::int64_t n) {
  const double sum = alpha_n + beta_n;
  if (!(sum > 0.0))
    throw std::invalid_argument(
        "lower_bound_curvature_second: alpha + beta must be > 0");
  if (n < 1)
    throw std::invalid_argument("lower_bound_curvature_second: n must be >= 1");
  return 2.0 / (double(n) * sum) + 4.0 * alpha_n / (sum * sum);
}

double second_lower_limit_constant() {
  const double c = 1.0 - std::exp(-2.0);
  return c * c / 4.0;
}

BoundReport proposition_noise_bound(const StepPair& pair, double h, double c,
                                    std::int64_t n) {
  if (!(h > 0.0))
    throw std::invalid_argument("proposition_noise_bound: h must be > 0");
  if (n < 1)
    throw std::invalid_argument("proposition_noise_bound: n must be >= 1");
  BoundReport report;
  check_triangle(report, pair, h, 2.0 / h - pair.alpha);
  const double nn = double(n);
  const double sum = pair.alpha + pair.beta;
  const double mix = pair.alpha * nn + pair.beta;
  const double damp = 4.0 - (pair.alpha + 2.0 * pair.beta) * h;
  if (pair.alpha > 0.0 && pair.beta > 0.0 && damp > 0.0)
    report.components.push_back(
        {"2 (a n + b)^2 c/(a b (4-(a+2b)h) n^2 h)",
         2.0 * mix * mix * c /
             (pair.alpha * pair.beta * damp * nn * nn * h)});
  if (sum > 0.0)
    report.components.push_back(
        {"16 (n a + b)^2 c/(n (a+b)^2 h)",
         16.0 * mix * mix * c / (nn * sum * sum * h)});
  if (pair.alpha > 0.0)
    report.components.push_back(
        {"2 (a n + b)^2 c/(n a)", 2.0 * mix * mix * c / (nn * pair.alpha)});
  if (sum > 0.0)
    report.components.push_back(
        {"8 (n a + b)^2 c/(a+b)", 8.0 * mix * mix * c / sum});
  finish_min(report);
  return report;
}

double lyapunov_energy(double alpha, double eta, double eta_prev) {
  return eta * eta + 2.0 * (alpha - 1.0) * eta * eta_prev +
         (1.0 - alpha) * eta_prev * eta_prev;
}

double lyapunov_contraction(const StepPair& pair, double eta,
                            double eta_prev) {
  const double r = 1.0 - 0.5 * (pair.alpha + pair.beta);
  const double delta = discriminant(pair, 1.0);
  const double shifted = eta - r * eta_prev;
  return shifted * shifted - delta * eta_prev * eta_prev;
}

}  // namespace twostep
