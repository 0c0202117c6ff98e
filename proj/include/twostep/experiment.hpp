#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "twostep/baselines.hpp"
#include "twostep/bounds.hpp"
#include "twostep/moment.hpp"
#include "twostep/noise.hpp"
#include "twostep/quadratic.hpp"
#include "twostep/recursion.hpp"
#include "twostep/schedule.hpp"
#include "twostep/spectral.hpp"

namespace twostep {

/// Invalid experiment configuration (CLI exit code 2).
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Divergence where it is not an expected outcome (CLI exit code 3).
struct DivergenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ProblemConfig {
  int dim = 1;
  int spectrum_power = 0;           // eigenvalues 1/k^m when explicit empty
  std::vector<double> eigenvalues;  // explicit spectrum, optional
  double r = 1.0;                   // ||theta_0 - theta_*||
};

struct NoiseConfig {
  std::string kind = "none";  // none | unstructured | structured
  double trace_c = 0.0;       // unstructured (isotropic completion)
  std::vector<double> c;      // unstructured, per-mode (overrides trace_c)
  double sigma = 0.0;         // structured (regression residual std dev)
};

struct AlgorithmConfig {
  std::string name;           // CSV label
  std::string type;           // unified | avgd_reference | acsa | sage | accrda
  Schedule schedule;          // unified only
  double gamma = 0.0;         // avgd_reference only
};

struct ExperimentConfig {
  ProblemConfig problem;
  NoiseConfig noise;
  std::vector<AlgorithmConfig> algorithms;
  std::int64_t horizon = 100;
  int replications = 1;
  std::uint64_t seed = 0;
};

ExperimentConfig load_config(const std::string& path);

/// Resolves the configured problem/noise into concrete objects.
struct ResolvedSetup {
  ProblemInstance instance;
  NoiseSpec noise;
  NoiseSummary summary;
};
ResolvedSetup resolve_setup(const ProblemConfig& problem,
                            const NoiseConfig& noise, std::uint64_t seed);

/// Mean/stderr excess curves over replications for one algorithm.
struct AlgorithmCurve {
  std::string name;
  std::vector<double> mean;    // per n
  std::vector<double> stderr_;  // per n
  int diverged_count = 0;
};

/// Least-squares slope of log10(mean excess) over the last decade
/// n in [N/10, N]; empty when fewer than two finite points exist.
std::optional<double> fit_last_decade_slope(const std::vector<double>& mean);

/// Runs every configured algorithm over `replications` seeded repetitions.
/// When out_dir is non-empty, writes one CSV per algorithm
/// (n, mean, stderr, diverged). Deterministic given the master seed.
std::vector<AlgorithmCurve> cmd_run(const ExperimentConfig& config,
                                    const std::string& out_dir);

/// Uniform grid over [alpha_min, alpha_max] x [beta_min, beta_max].
std::vector<StabilityCell> cmd_stability_map(double alpha_min,
                                             double alpha_max, double beta_min,
                                             double beta_max, double h,
                                             int resolution,
                                             const std::string& out_path);

enum class BoundSelector { IterateBound, Noiseless, Unstructured, Structured };

struct BoundCheckRow {
  double alpha = 0.0;
  double beta = 0.0;
  std::int64_t N = 0;
  double empirical = 0.0;
  double bound = 0.0;
  double slack = 0.0;
  bool preconditions_met = true;
};

/// Seeded sweep of one bound family; empirical values come from the closed
/// forms / moment engine, never Monte Carlo.
std::vector<BoundCheckRow> cmd_bounds_check(BoundSelector selector, int count,
                                            std::uint64_t seed,
                                            const std::string& out_path);

struct LowerBoundRow {
  std::int64_t n = 0;
  double scaled_excess = 0.0;
  double limit = 0.0;
  double rel_error = 0.0;
};

/// Adversarial 1-D sequences: regime "first" runs the constant
/// alpha_n = beta_n family (limit r^2/2 for alpha n^2 excess); "second" runs
/// alpha_n = 1/n^2, beta_n = 1 (limit (1-e^-2)^2 r^2/4 for n(alpha+beta)
/// excess).
std::vector<LowerBoundRow> cmd_lower_bound(const std::string& regime,
                                           const std::vector<std::int64_t>& ns,
                                           const std::string& out_path);

struct CompareConfig {
  int dim = 20;
  int spectrum_power = 2;
  double r = 1.0;
  double sigma = 1.0;
  std::int64_t horizon = 10000;
  int replications = 10;
  bool anytime = true;  // unified uses per-step horizon-free steps
  std::uint64_t seed = 0;
};

struct CompareResult {
  std::vector<AlgorithmCurve> curves;
  std::vector<std::optional<double>> slopes;  // parallel to curves
};

/// Runs unified, Av-GD, Acc-GD, AC-SA, SAGE and Acc-RDA on the shared
/// regression-noise setup; writes a combined CSV plus a slopes CSV when
/// out_dir is non-empty.
CompareResult cmd_compare(const CompareConfig& config,
                          const std::string& out_dir);

}  // namespace twostep
