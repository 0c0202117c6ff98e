#include "twostep/schedule.hpp"

#include <algorithm>

namespace twostep {

StepPair resolve_schedule(const Schedule& schedule, double L, double r,
                          const NoiseSummary& noise, int n_or_N) {
  if (n_or_N < 1) throw std::invalid_argument("horizon must be >= 1");
  const double N = double(n_or_N);
  switch (schedule.kind) {
    case ScheduleKind::AvGD:
      if (!(schedule.gamma > 0.0))
        throw std::invalid_argument("AvGD requires gamma > 0");
      return {0.0, schedule.gamma};
    case ScheduleKind::AccGD:
      if (!(schedule.gamma > 0.0))
        throw std::invalid_argument("AccGD requires gamma > 0");
      return {schedule.gamma, schedule.gamma};
    case ScheduleKind::HeavyBall:
      if (!(schedule.gamma > 0.0))
        throw std::invalid_argument("HeavyBall requires gamma > 0");
      return {schedule.gamma, 0.0};
    case ScheduleKind::Custom:
      return {schedule.alpha, schedule.beta};
    case ScheduleKind::BiasVariance: {
      if (schedule.exponent < 0.0 || schedule.exponent > 1.0)
        throw std::invalid_argument("BiasVariance requires a in [0, 1]");
      return {1.0 / (L * std::pow(N, schedule.exponent)), 1.0 / L};
    }
    case ScheduleKind::OptimalUnstructured: {
      if (!noise.trace_c)
        throw std::invalid_argument(
            "OptimalUnstructured requires tr C in the noise summary");
      const double trc = *noise.trace_c;
      double alpha = 1.0 / L;
      if (trc > 0.0)
        alpha = std::min(r / (2.0 * std::sqrt(trc) * std::pow(N, 1.5)),
                         1.0 / L);
      const double beta = std::min(N * alpha, 1.0 / L);
      return {alpha, beta};
    }
    case ScheduleKind::OptimalStructured: {
      if (!noise.trace_c_hinv)
        throw std::invalid_argument(
            "OptimalStructured requires tr(C H^-1) in the noise summary");
      const double trchi = *noise.trace_c_hinv;
      double alpha = 1.0 / L;
      if (trchi > 0.0)
        alpha = std::min(r / (std::sqrt(L * trchi) * N), 1.0 / L);
      const double beta = std::min(N * alpha, 1.0 / L);
      return {alpha, beta};
    }
  }
  throw std::logic_error("unreachable schedule kind");
}

}  // namespace twostep
