#pragma once

#include <cmath>
#include <stdexcept>

#include "twostep/noise.hpp"

namespace twostep {

/// The two step-sizes of the unified recursion. Validity against a given L is
/// a spectral question (see stability_region), not enforced here.
struct StepPair {
  double alpha = 0.0;
  double beta = 0.0;
};

enum class ScheduleKind {
  AvGD,         // (0, gamma)
  AccGD,        // (gamma, gamma)
  HeavyBall,    // (gamma, 0)
  Custom,       // (alpha, beta) as given
  BiasVariance,        // alpha = 1/(L N^a), beta = 1/L
  OptimalUnstructured, // horizon-tuned trade-off for tr C
  OptimalStructured,   // horizon-tuned trade-off for tr(C H^-1)
};

struct Schedule {
  ScheduleKind kind = ScheduleKind::AvGD;
  double gamma = 0.0;     // AvGD / AccGD / HeavyBall
  double alpha = 0.0;     // Custom
  double beta = 0.0;      // Custom
  double exponent = 0.0;  // BiasVariance, a in [0, 1]
  int horizon = 1;        // N for horizon-dependent kinds
  bool anytime = false;   // substitute n for N each step

  static Schedule avgd(double g) { return {ScheduleKind::AvGD, g}; }
  static Schedule accgd(double g) { return {ScheduleKind::AccGD, g}; }
  static Schedule heavy_ball(double g) { return {ScheduleKind::HeavyBall, g}; }
  static Schedule custom(double a, double b) {
    Schedule s;
    s.kind = ScheduleKind::Custom;
    s.alpha = a;
    s.beta = b;
    return s;
  }
};

/// Resolves a schedule to concrete step sizes. `n_or_N` is the horizon N, or
/// the current step when the schedule is anytime.
StepPair resolve_schedule(const Schedule& schedule, double L, double r,
                          const NoiseSummary& noise, int n_or_N);

}  // namespace twostep
