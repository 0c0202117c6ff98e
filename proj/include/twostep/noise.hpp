#pragma once

#include <Eigen/Dense>
#include <optional>
#include <stdexcept>

namespace twostep {

enum class NoiseKind { None, Unstructured, Structured };

/// Second-moment description of the additive gradient noise, per eigenmode.
/// Unstructured carries arbitrary per-mode variances c_i; Structured encodes
/// E[eps (x) eps] = sigma^2 H, i.e. c_i = sigma^2 h_i.
struct NoiseSpec {
  NoiseKind kind = NoiseKind::None;
  Eigen::VectorXd c;    // per-mode variances, empty for None
  double sigma2 = 0.0;  // Structured only

  static NoiseSpec none() { return {}; }

  static NoiseSpec unstructured(Eigen::VectorXd per_mode) {
    if ((per_mode.array() < 0.0).any())
      throw std::invalid_argument("noise variances must be >= 0");
    return {NoiseKind::Unstructured, std::move(per_mode), 0.0};
  }

  /// Isotropic completion when only tr C is known.
  static NoiseSpec isotropic(double trace_c, int dim) {
    if (trace_c < 0.0) throw std::invalid_argument("trace must be >= 0");
    return unstructured(
        Eigen::VectorXd::Constant(dim, trace_c / double(dim)));
  }

  static NoiseSpec structured(double sigma2, const Eigen::VectorXd& h) {
    if (sigma2 < 0.0) throw std::invalid_argument("sigma^2 must be >= 0");
    return {NoiseKind::Structured, sigma2 * h, sigma2};
  }

  double trace_c() const { return c.size() ? c.sum() : 0.0; }
  double trace_c_hinv(const Eigen::VectorXd& h) const {
    return c.size() ? (c.array() / h.array()).sum() : 0.0;
  }
};

/// The scalar statistics the horizon-tuned step-size rules need.
struct NoiseSummary {
  std::optional<double> trace_c;
  std::optional<double> trace_c_hinv;
};

}  // namespace twostep
