#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "twostep/capi.h"

namespace {

int exit_code(ts_status status) {
  switch (status) {
    case TS_OK:
      return 0;
    case TS_ERR_DIVERGED:
      return 3;
    case TS_ERR_INVALID:
    case TS_ERR_IO:
    default:
      return 2;
  }
}

int finish(ts_status status) {
  if (status != TS_OK) std::fprintf(stderr, "error: %s\n", ts_last_error());
  return exit_code(status);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-step gradient recursion experiment harness"};
  app.require_subcommand(1);

  std::string config_path, out, selector = "iterate", regime = "first";
  std::int64_t seed = -1;
  int reps = -1;
  bool anytime = false;

  auto* run = app.add_subcommand("run", "Run a configured experiment");
  run->add_option("--config", config_path, "Experiment config (JSON)")
      ->required();
  run->add_option("--out", out, "Output directory")->required();
  run->add_option("--seed", seed, "Master seed override");
  run->add_option("--reps", reps, "Replication count override");

  double alpha_min = -0.5, alpha_max = 4.5, beta_min = -0.5, beta_max = 4.5;
  double h = 1.0;
  int resolution = 200;
  auto* smap = app.add_subcommand("stability-map",
                                  "Rasterize the stability region");
  smap->add_option("--alpha-min", alpha_min, "Grid lower alpha");
  smap->add_option("--alpha-max", alpha_max, "Grid upper alpha");
  smap->add_option("--beta-min", beta_min, "Grid lower beta");
  smap->add_option("--beta-max", beta_max, "Grid upper beta");
  smap->add_option("--eigenvalue", h, "Eigenvalue h");
  smap->add_option("--resolution", resolution, "Cells per axis");
  smap->add_option("--out", out, "Output CSV path")->required();

  int count = 500;
  auto* bounds = app.add_subcommand("bounds-check",
                                    "Sweep one bound family");
  bounds->add_option("--selector", selector,
                     "iterate | noiseless | unstructured | structured");
  bounds->add_option("--count", count, "Number of sampled configurations");
  bounds->add_option("--seed", seed, "Sampling seed");
  bounds->add_option("--out", out, "Output CSV path")->required();

  std::vector<std::int64_t> ns;
  auto* lower = app.add_subcommand("lower-bound",
                                   "Evaluate the adversarial sequences");
  lower->add_option("--regime", regime, "first | second");
  lower->add_option("--n", ns, "Horizons to evaluate");
  lower->add_option("--out", out, "Output CSV path")->required();

  int dim = 20, spectrum_power = 2;
  double r = 1.0, sigma = 1.0;
  std::int64_t horizon = 10000;
  int compare_reps = 10;
  auto* compare = app.add_subcommand(
      "compare", "Run all algorithms on the shared regression-noise setup");
  compare->add_option("--dim", dim, "Problem dimension");
  compare->add_option("--spectrum-power", spectrum_power,
                      "Eigenvalues 1/k^m");
  compare->add_option("--r", r, "Initial distance to the optimum");
  compare->add_option("--sigma", sigma, "Residual standard deviation");
  compare->add_option("--horizon", horizon, "Number of iterations");
  compare->add_option("--reps", compare_reps, "Replications");
  compare->add_flag("--anytime", anytime,
                    "Per-step horizon-free steps for the unified algorithm");
  compare->add_option("--seed", seed, "Master seed");
  compare->add_option("--out", out, "Output directory")->required();

  CLI11_PARSE(app, argc, argv);

  if (run->parsed())
    return finish(ts_cmd_run(config_path.c_str(), seed, reps, out.c_str()));
  if (smap->parsed())
    return finish(ts_cmd_stability_map(alpha_min, alpha_max, beta_min,
                                       beta_max, h, resolution, out.c_str()));
  if (bounds->parsed())
    return finish(ts_cmd_bounds_check(selector.c_str(), count,
                                      seed < 0 ? 0 : uint64_t(seed),
                                      out.c_str()));
  if (lower->parsed()) {
    if (ns.empty()) ns = {10, 100, 1000, 10000, 100000};
    return finish(ts_cmd_lower_bound(regime.c_str(), ns.data(),
                                     int(ns.size()), out.c_str()));
  }
  if (compare->parsed())
    return finish(ts_cmd_compare(dim, spectrum_power, r, sigma, horizon,
                                 compare_reps, anytime ? 1 : 0,
                                 seed < 0 ? 0 : uint64_t(seed), out.c_str()));
  return 2;
}
