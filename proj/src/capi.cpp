#include "twostep/capi.h"

#include <cstring>
#include <string>

#include "twostep/experiment.hpp"
#include "twostep/random.hpp"

namespace {

thread_local std::string g_last_error;

ts_status fail(ts_status status, const std::string& message) {
  g_last_error = message;
  return status;
}

template <typename Fn>
ts_status guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const twostep::ConfigError& e) {
    return fail(TS_ERR_INVALID, e.what());
  } catch (const twostep::DivergenceError& e) {
    return fail(TS_ERR_DIVERGED, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(TS_ERR_INVALID, e.what());
  } catch (const std::exception& e) {
    return fail(TS_ERR_IO, e.what());
  }
}

twostep::NoiseConfig parse_noise(const char* kind, double param) {
  twostep::NoiseConfig noise;
  noise.kind = kind ? kind : "none";
  if (noise.kind == "unstructured") noise.trace_c = param;
  if (noise.kind == "structured") noise.sigma = param;
  return noise;
}

twostep::NoiseSpec noise_spec_for(const twostep::QuadraticProblem& problem,
                                  const twostep::NoiseConfig& noise) {
  if (noise.kind == "none") return twostep::NoiseSpec::none();
  if (noise.kind == "unstructured")
    return twostep::NoiseSpec::isotropic(noise.trace_c, problem.dim());
  if (noise.kind == "structured")
    return twostep::NoiseSpec::structured(noise.sigma * noise.sigma,
                                          problem.eigenvalues());
  throw std::invalid_argument("unknown noise kind: " + noise.kind);
}

std::unique_ptr<twostep::GradientOracle> oracle_for(
    const twostep::QuadraticProblem& problem,
    const twostep::NoiseConfig& noise, std::uint64_t seed) {
  if (noise.kind == "none") return twostep::exact_oracle(problem);
  if (noise.kind == "unstructured")
    return twostep::additive_noise_oracle(
        problem, noise_spec_for(problem, noise).c, seed);
  if (noise.kind == "structured")
    return twostep::ls_semi_stochastic_oracle(problem, noise.sigma, seed);
  throw std::invalid_argument("unknown noise kind: " + noise.kind);
}

}  // namespace

struct ts_problem {
  twostep::ProblemInstance instance;
};

extern "C" {

const char* ts_last_error(void) { return g_last_error.c_str(); }

ts_problem* ts_problem_create(const double* eigenvalues, int dim, double r,
                              uint64_t seed) {
  try {
    if (!eigenvalues || dim < 1) {
      g_last_error = "eigenvalues must be non-null with dim >= 1";
      return nullptr;
    }
    std::vector<double> eig(eigenvalues, eigenvalues + dim);
    return new ts_problem{twostep::make_problem(eig, r, seed)};
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return nullptr;
  }
}

void ts_problem_destroy(ts_problem* problem) { delete problem; }

int ts_problem_dim(const ts_problem* problem) {
  return problem ? problem->instance.problem.dim() : 0;
}

double ts_problem_largest_eigenvalue(const ts_problem* problem) {
  return problem ? problem->instance.problem.largest() : 0.0;
}

ts_status ts_run_unified(const ts_problem* problem, double alpha, double beta,
                         int64_t horizon, const char* noise_kind,
                         double noise_param, uint64_t seed, double* excess_out,
                         int* diverged_out) {
  if (!problem || !excess_out)
    return fail(TS_ERR_INVALID, "null problem or output buffer");
  return guarded([&] {
    const twostep::NoiseConfig noise = parse_noise(noise_kind, noise_param);
    auto oracle = oracle_for(problem->instance.problem, noise, seed);
    twostep::Trajectory t = twostep::run(
        *oracle, problem->instance.problem, problem->instance.theta0,
        twostep::StepPair{alpha, beta}, horizon);
    std::memcpy(excess_out, t.excess.data(), t.excess.size() * sizeof(double));
    if (diverged_out) *diverged_out = t.diverged ? 1 : 0;
    return TS_OK;
  });
}

ts_status ts_expected_excess(const ts_problem* problem, double alpha,
                             double beta, const char* noise_kind,
                             double noise_param, int64_t horizon,
                             double* value_out) {
  if (!problem || !value_out)
    return fail(TS_ERR_INVALID, "null problem or output pointer");
  return guarded([&] {
    const twostep::NoiseConfig noise = parse_noise(noise_kind, noise_param);
    *value_out = twostep::expected_excess(
                     problem->instance.problem, problem->instance.theta0,
                     twostep::StepPair{alpha, beta},
                     noise_spec_for(problem->instance.problem, noise), horizon)
                     .value;
    return TS_OK;
  });
}

ts_status ts_classify_mode(double alpha, double beta, double h, int* class_out,
                           int* stability_out, double* max_root_modulus_out) {
  return guarded([&] {
    const twostep::EigenMode mode =
        twostep::classify(twostep::StepPair{alpha, beta}, h);
    if (class_out) *class_out = int(mode.cls);
    if (stability_out) *stability_out = int(mode.stability);
    if (max_root_modulus_out) *max_root_modulus_out = mode.max_root_modulus;
    return TS_OK;
  });
}

ts_status ts_iterate_bound(double alpha, double beta, double h, double eta1,
                           int64_t n, double* value_out,
                           int* preconditions_met_out) {
  return guarded([&] {
    const twostep::BoundReport report =
        twostep::iterate_bound(twostep::StepPair{alpha, beta}, h, eta1, n);
    if (value_out) *value_out = report.value;
    if (preconditions_met_out)
      *preconditions_met_out = report.preconditions_met ? 1 : 0;
    return TS_OK;
  });
}

ts_status ts_cmd_run(const char* config_path, int64_t seed_override,
                     int reps_override, const char* out_dir) {
  if (!config_path || !out_dir)
    return fail(TS_ERR_INVALID, "null config path or output directory");
  return guarded([&] {
    twostep::ExperimentConfig config = twostep::load_config(config_path);
    if (seed_override >= 0) config.seed = std::uint64_t(seed_override);
    if (reps_override >= 1) config.replications = reps_override;
    twostep::cmd_run(config, out_dir);
    return TS_OK;
  });
}

ts_status ts_cmd_stability_map(double alpha_min, double alpha_max,
                               double beta_min, double beta_max, double h,
                               int resolution, const char* out_path) {
  if (!out_path) return fail(TS_ERR_INVALID, "null output path");
  return guarded([&] {
    twostep::cmd_stability_map(alpha_min, alpha_max, beta_min, beta_max, h,
                               resolution, out_path);
    return TS_OK;
  });
}

ts_status ts_cmd_bounds_check(const char* selector, int count, uint64_t seed,
                              const char* out_path) {
  if (!selector || !out_path)
    return fail(TS_ERR_INVALID, "null selector or output path");
  return guarded([&] {
    const std::string name = selector;
    twostep::BoundSelector sel;
    if (name == "iterate")
      sel = twostep::BoundSelector::IterateBound;
    else if (name == "noiseless")
      sel = twostep::BoundSelector::Noiseless;
    else if (name == "unstructured")
      sel = twostep::BoundSelector::Unstructured;
    else if (name == "structured")
      sel = twostep::BoundSelector::Structured;
    else
      throw twostep::ConfigError("unknown bound selector: " + name);
    twostep::cmd_bounds_check(sel, count, seed, out_path);
    return TS_OK;
  });
}

ts_status ts_cmd_lower_bound(const char* regime, const int64_t* ns,
                             int ns_count, const char* out_path) {
  if (!regime || !ns || ns_count < 1 || !out_path)
    return fail(TS_ERR_INVALID, "bad lower-bound arguments");
  return guarded([&] {
    std::vector<std::int64_t> horizons(ns, ns + ns_count);
    twostep::cmd_lower_bound(regime, horizons, out_path);
    return TS_OK;
  });
}

ts_status ts_cmd_compare(int dim, int spectrum_power, double r, double sigma,
                         int64_t horizon, int replications, int anytime,
                         uint64_t seed, const char* out_dir) {
  if (!out_dir) return fail(TS_ERR_INVALID, "null output directory");
  return guarded([&] {
    twostep::CompareConfig config;
    config.dim = dim;
    config.spectrum_power = spectrum_power;
    config.r = r;
    config.sigma = sigma;
    config.horizon = horizon;
    config.replications = replications;
    config.anytime = anytime != 0;
    config.seed = seed;
    twostep::cmd_compare(config, out_dir);
    return TS_OK;
  });
}

}  // extern "C"
