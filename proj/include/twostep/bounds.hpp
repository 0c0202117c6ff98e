#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "twostep/schedule.hpp"

namespace twostep {

struct BoundComponent {
  std::string label;
  double value = 0.0;
};

/// A min- or max-of-terms bound evaluation. Terms whose parameter regime
/// makes them infinite (alpha = 0, beta = 0, ...) are omitted from
/// `components`. `violated` names the failed precondition when
/// preconditions_met is false; the value is still reported.
struct BoundReport {
  double value = 0.0;
  std::vector<BoundComponent> components;
  bool preconditions_met = true;
  std::string violated;
};

/// Bound on eta_n^2 for a single noiseless mode started at eta_1:
/// min{2 eta1^2/(alpha h), 8 eta1^2 n/((alpha+beta) h),
///     16 eta1^2/((alpha+beta)^2 h^2)}.
/// Preconditions: 0 <= alpha <= 1/h, 0 <= beta <= 2/h - alpha.
BoundReport iterate_bound(const StepPair& pair, double h, double eta1,
                          std::int64_t n);

/// Noiseless function-value bound:
/// min{r^2/(alpha n^2), 4 r^2/((alpha+beta) n)}.
BoundReport function_bound_noiseless(const StepPair& pair, double L, double r,
                                     std::int64_t n);

/// Noisy bound for unstructured noise with trace tr C:
/// min{ r^2/(alpha N^2) + ((alpha N + beta)^2/(alpha N)) trC,
///      4 r^2/((alpha+beta) N) + (4 (alpha N + beta)^2/(alpha+beta)) trC }.
BoundReport function_bound_unstructured(const StepPair& pair, double L,
                                        double r, double trace_C,
                                        std::int64_t N);

/// Noisy bound for structured noise with tr(C H^-1):
/// min{ r^2/(N^2 alpha) + ((alpha N + beta)^2/(alpha beta N^2)) trCHinv,
///      4 L r^2/((alpha+beta) N)
///        + (8 (alpha N + beta)^2/((alpha+beta)^2 N)) trCHinv }.
/// Preconditions: 0 <= alpha <= 1/L, 0 <= beta <= 3/(2L) - alpha/2.
BoundReport function_bound_structured(const StepPair& pair, double L, double r,
                                      double trace_C_Hinv, std::int64_t N);

/// Horizon-tuned pair for unstructured noise plus its guarantee
/// 2 L r^2/N^2 + 4 sqrt(trC) r/sqrt(N).
std::pair<StepPair, BoundReport> tradeoff_bound_unstructured(double r,
                                                             double trace_C,
                                                             std::int64_t N,
                                                             double L);

/// Horizon-tuned pair for structured noise plus its guarantee
/// max{5 trCHinv/N, 5 sqrt(trCHinv L) r/N, 2 r^2 L/N^2}.
std::pair<StepPair, BoundReport> tradeoff_bound_structured(double r,
                                                           double trace_C_Hinv,
                                                           std::int64_t N,
                                                           double L);

/// Adversarial 1-D curvatures: pi^2/(4 alpha_n n^2), for which
/// alpha_n n^2 excess -> r^2/2 when alpha_n + beta_n = o(n alpha_n).
double lower_bound_curvature_first(double alpha_n, std::int64_t n);

/// 2/(n(alpha_n+beta_n)) + 4 alpha_n/(alpha_n+beta_n)^2, for which
/// n(alpha_n+beta_n) excess -> (1 - e^-2)^2 r^2/4 when
/// n alpha_n = o(alpha_n + beta_n).
double lower_bound_curvature_second(double alpha_n, double beta_n,
                                    std::int64_t n);

/// Limit constant of the second adversarial sequence, (1 - e^-2)^2/4.
double second_lower_limit_constant();

/// Per-mode bound on the variance term (1/n^2) * variance accumulation:
/// min of the four printed terms, invalid ones dropped.
BoundReport proposition_noise_bound(const StepPair& pair, double h, double c,
                                    std::int64_t n);

/// Theta^T G1 Theta with G1 = [[1, alpha-1], [alpha-1, 1-alpha]] (h = 1);
/// non-increasing along the recursion for 0 <= alpha <= 1 and
/// 1 - sqrt(1-alpha) < beta < 1 + sqrt(1-alpha).
double lyapunov_energy(double alpha, double eta, double eta_prev);

/// G2(eta, eta_prev) = (eta - r eta_prev)^2 - Delta eta_prev^2 (h = 1);
/// contracts by exactly (1 - beta) per step for beta <= alpha <= 1.
double lyapunov_contraction(const StepPair& pair, double eta,
                            double eta_prev);

}  // namespace twostep
