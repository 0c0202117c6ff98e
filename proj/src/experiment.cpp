#include "twostep/experiment.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <random>

#include <nlohmann/json.hpp>

#include "twostep/random.hpp"

namespace twostep {

using json = nlohmann::json;

namespace {

ScheduleKind parse_schedule_kind(const std::string& kind) {
  if (kind == "avgd") return ScheduleKind::AvGD;
  if (kind == "accgd") return ScheduleKind::AccGD;
  if (kind == "heavy_ball") return ScheduleKind::HeavyBall;
  if (kind == "custom") return ScheduleKind::Custom;
  if (kind == "bias_variance") return ScheduleKind::BiasVariance;
  if (kind == "optimal_unstructured") return ScheduleKind::OptimalUnstructured;
  if (kind == "optimal_structured") return ScheduleKind::OptimalStructured;
  throw ConfigError("unknown schedule kind: " + kind);
}

Schedule parse_schedule(const json& j) {
  Schedule s;
  s.kind = parse_schedule_kind(j.at("kind").get<std::string>());
  s.gamma = j.value("gamma", 0.0);
  s.alpha = j.value("alpha", 0.0);
  s.beta = j.value("beta", 0.0);
  s.exponent = j.value("exponent", 0.0);
  s.horizon = j.value("horizon", 0);
  s.anytime = j.value("anytime", false);
  return s;
}

std::unique_ptr<GradientOracle> make_oracle(const ResolvedSetup& setup,
                                            const NoiseConfig& noise,
                                            std::uint64_t seed) {
  const QuadraticProblem& problem = setup.instance.problem;
  if (noise.kind == "none") return exact_oracle(problem);
  if (noise.kind == "unstructured")
    return additive_noise_oracle(problem, setup.noise.c, seed);
  if (noise.kind == "structured")
    return ls_semi_stochastic_oracle(problem, noise.sigma, seed);
  throw ConfigError("unknown noise kind: " + noise.kind);
}

Trajectory run_algorithm(const AlgorithmConfig& alg,
                         const ResolvedSetup& setup, GradientOracle& oracle,
                         double r, std::int64_t N) {
  const QuadraticProblem& problem = setup.instance.problem;
  const Eigen::VectorXd& theta0 = setup.instance.theta0;
  const double L = problem.largest();
  const double trace_C = setup.summary.trace_c.value_or(0.0);
  if (alg.type == "unified")
    return run(oracle, problem, theta0, alg.schedule, N, r, setup.summary);
  if (alg.type == "avgd_reference") {
    if (!(alg.gamma > 0.0))
      throw ConfigError("avgd_reference requires gamma > 0");
    return avgd_reference(oracle, problem, theta0, alg.gamma, N);
  }
  if (alg.type == "acsa")
    return run_acsa(acsa_optimal(L, r, trace_C), oracle, problem, theta0, N)
        .trajectory;
  if (alg.type == "sage")
    return run_sage(sage_optimal(L, r, trace_C), oracle, problem, theta0, N)
        .trajectory;
  if (alg.type == "accrda")
    return run_accrda(accrda_optimal(L, r, trace_C), oracle, problem, theta0,
                      N)
        .trajectory;
  throw ConfigError("unknown algorithm type: " + alg.type);
}

AlgorithmCurve aggregate(const std::string& name,
                         const std::vector<std::vector<double>>& runs,
                         int diverged_count) {
  AlgorithmCurve curve;
  curve.name = name;
  curve.diverged_count = diverged_count;
  const size_t len = runs.front().size();
  const double reps = double(runs.size());
  curve.mean.assign(len, 0.0);
  curve.stderr_.assign(len, 0.0);
  for (size_t n = 0; n < len; ++n) {
    double mean = 0.0;
    for (const auto& run : runs) mean += run[n];
    mean /= reps;
    curve.mean[n] = mean;
    if (runs.size() > 1 && std::isfinite(mean)) {
      double var = 0.0;
      for (const auto& run : runs) {
        const double d = run[n] - mean;
        var += d * d;
      }
      var /= (reps - 1.0);
      curve.stderr_[n] = std::sqrt(var / reps);
    }
  }
  return curve;
}

void write_curve_csv(const AlgorithmCurve& curve, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out.precision(17);
  out << "n,mean,stderr,diverged\n";
  for (size_t n = 0; n < curve.mean.size(); ++n)
    out << n << "," << curve.mean[n] << "," << curve.stderr_[n] << ","
        << curve.diverged_count << "\n";
}

}  // namespace

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config parse error: ") + e.what());
  }
  try {
    ExperimentConfig config;
    const json& p = j.at("problem");
    config.problem.dim = p.at("dim").get<int>();
    config.problem.spectrum_power = p.value("spectrum_power", 0);
    if (p.contains("eigenvalues"))
      config.problem.eigenvalues =
          p.at("eigenvalues").get<std::vector<double>>();
    config.problem.r = p.value("r", 1.0);
    if (j.contains("noise")) {
      const json& n = j.at("noise");
      config.noise.kind = n.value("kind", "none");
      config.noise.trace_c = n.value("trace_c", 0.0);
      config.noise.sigma = n.value("sigma", 0.0);
      if (n.contains("c"))
        config.noise.c = n.at("c").get<std::vector<double>>();
    }
    config.horizon = j.at("horizon").get<std::int64_t>();
    config.replications = j.value("replications", 1);
    config.seed = j.value("seed", std::uint64_t(0));
    for (const json& a : j.at("algorithms")) {
      AlgorithmConfig alg;
      alg.name = a.at("name").get<std::string>();
      alg.type = a.at("type").get<std::string>();
      if (a.contains("schedule")) alg.schedule = parse_schedule(a.at("schedule"));
      alg.gamma = a.value("gamma", 0.0);
      config.algorithms.push_back(std::move(alg));
    }
    if (config.replications < 1)
      throw ConfigError("replications must be >= 1");
    if (config.horizon < 1) throw ConfigError("horizon must be >= 1");
    if (config.algorithms.empty())
      throw ConfigError("at least one algorithm is required");
    return config;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config field error: ") + e.what());
  }
}

ResolvedSetup resolve_setup(const ProblemConfig& problem,
                            const NoiseConfig& noise, std::uint64_t seed) {
  std::vector<double> eigenvalues = problem.eigenvalues;
  if (eigenvalues.empty())
    eigenvalues = spectrum_power_law(problem.dim, problem.spectrum_power);
  if (int(eigenvalues.size()) != problem.dim)
    throw ConfigError("eigenvalue count does not match dim");
  ProblemInstance instance = make_problem(eigenvalues, problem.r, seed);
  NoiseSpec spec = NoiseSpec::none();
  if (noise.kind == "unstructured") {
    if (!noise.c.empty()) {
      if (int(noise.c.size()) != problem.dim)
        throw ConfigError("per-mode noise variance count does not match dim");
      spec = NoiseSpec::unstructured(Eigen::Map<const Eigen::VectorXd>(
          noise.c.data(), long(noise.c.size())));
    } else {
      spec = NoiseSpec::isotropic(noise.trace_c, problem.dim);
    }
  } else if (noise.kind == "structured") {
    spec = NoiseSpec::structured(noise.sigma * noise.sigma,
                                 instance.problem.eigenvalues());
  } else if (noise.kind != "none") {
    throw ConfigError("unknown noise kind: " + noise.kind);
  }
  NoiseSummary summary;
  summary.trace_c = spec.trace_c();
  summary.trace_c_hinv = spec.trace_c_hinv(instance.problem.eigenvalues());
  return {std::move(instance), std::move(spec), summary};
}

std::optional<double> fit_last_decade_slope(const std::vector<double>& mean) {
  const std::int64_t N = std::int64_t(mean.size()) - 1;
  if (N < 2) return std::nullopt;
  const std::int64_t start = std::max<std::int64_t>(2, N / 10);
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  std::int64_t count = 0;
  for (std::int64_t n = start; n <= N; ++n) {
    const double y = mean[size_t(n)];
    if (!(std::isfinite(y) && y > 0.0)) continue;
    const double lx = std::log10(double(n));
    const double ly = std::log10(y);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++count;
  }
  if (count < 2) return std::nullopt;
  const double denom = double(count) * sxx - sx * sx;
  if (denom == 0.0) return std::nullopt;
  return (double(count) * sxy - sx * sy) / denom;
}

std::vector<AlgorithmCurve> cmd_run(const ExperimentConfig& config,
                                    const std::string& out_dir) {
  const ResolvedSetup setup =
      resolve_setup(config.problem, config.noise, config.seed);
  std::vector<AlgorithmCurve> curves;
  for (const AlgorithmConfig& alg : config.algorithms) {
    std::vector<std::vector<double>> runs;
    int diverged = 0;
    for (int rep = 0; rep < config.replications; ++rep) {
      auto oracle =
          make_oracle(setup, config.noise, mix_seed(config.seed, rep));
      Trajectory t = run_algorithm(alg, setup, *oracle, config.problem.r,
                                   config.horizon);
      if (t.diverged) ++diverged;
      runs.push_back(std::move(t.excess));
    }
    AlgorithmCurve curve = aggregate(alg.name, runs, diverged);
    if (!out_dir.empty())
      write_curve_csv(curve, out_dir + "/" + alg.name + ".csv");
    curves.push_back(std::move(curve));
  }
  return curves;
}

std::vector<StabilityCell> cmd_stability_map(double alpha_min,
                                             double alpha_max, double beta_min,
                                             double beta_max, double h,
                                             int resolution,
                                             const std::string& out_path) {
  if (resolution < 2) throw ConfigError("stability map resolution must be >= 2");
  if (!(alpha_max > alpha_min) || !(beta_max > beta_min))
    throw ConfigError("stability map ranges must be non-empty");
  std::vector<double> alphas(resolution), betas(resolution);
  for (int i = 0; i < resolution; ++i) {
    const double t = double(i) / double(resolution - 1);
    alphas[i] = alpha_min + t * (alpha_max - alpha_min);
    betas[i] = beta_min + t * (beta_max - beta_min);
  }
  std::vector<StabilityCell> cells = stability_map(alphas, betas, h);
  if (!out_path.empty()) write_stability_csv(cells, out_path);
  return cells;
}

std::vector<BoundCheckRow> cmd_bounds_check(BoundSelector selector, int count,
                                            std::uint64_t seed,
                                            const std::string& out_path) {
  if (count < 1) throw ConfigError("bounds check count must be >= 1");
  std::vector<BoundCheckRow> rows;
  rows.reserve(size_t(count));
  for (int i = 0; i < count; ++i) {
    std::mt19937_64 rng(mix_seed(seed, std::uint64_t(i)));
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    BoundCheckRow row;
    switch (selector) {
      case BoundSelector::IterateBound: {
        const double h = 0.1 + 1.9 * unit(rng);
        const double alpha = (0.01 + 0.99 * unit(rng)) / h;
        const double beta = unit(rng) * (2.0 / h - alpha);
        const std::int64_t n = 1 + std::int64_t(unit(rng) * 999.0);
        const StepPair pair{alpha, beta};
        const double eta = closed_form_eta(classify(pair, h), 1.0, n);
        const BoundReport report = iterate_bound(pair, h, 1.0, n);
        row = {alpha, beta, n, eta * eta, report.value,
               report.value - eta * eta, report.preconditions_met};
        break;
      }
      case BoundSelector::Noiseless: {
        const int d = 3;
        std::vector<double> eig = {0.2 + 0.7 * unit(rng),
                                   0.2 + 0.7 * unit(rng), 1.0};
        const double r = 0.5 + 1.5 * unit(rng);
        ProblemInstance inst =
            make_problem(eig, r, mix_seed(seed, 7919 + std::uint64_t(i)));
        const double L = inst.problem.largest();
        const double alpha = (0.01 + 0.99 * unit(rng)) / L;
        const double beta = unit(rng) * (2.0 / L - alpha);
        const std::int64_t n = 1 + std::int64_t(unit(rng) * 999.0);
        const StepPair pair{alpha, beta};
        const double empirical =
            closed_form_excess(inst.problem, inst.theta0, pair, n);
        const BoundReport report = function_bound_noiseless(pair, L, r, n);
        row = {alpha, beta, n, empirical, report.value,
               report.value - empirical, report.preconditions_met};
        break;
      }
      case BoundSelector::Unstructured:
      case BoundSelector::Structured: {
        const bool structured = selector == BoundSelector::Structured;
        const int d = 3;
        std::vector<double> eig = {0.2 + 0.7 * unit(rng),
                                   0.2 + 0.7 * unit(rng), 1.0};
        const double r = 0.5 + 1.5 * unit(rng);
        ProblemInstance inst =
            make_problem(eig, r, mix_seed(seed, 104729 + std::uint64_t(i)));
        const double L = inst.problem.largest();
        const double alpha = (0.01 + 0.99 * unit(rng)) / L;
        const double beta_cap =
            structured ? 1.5 / L - 0.5 * alpha : 2.0 / L - alpha;
        const double beta = unit(rng) * beta_cap;
        const std::int64_t N = 2 + std::int64_t(unit(rng) * 498.0);
        const StepPair pair{alpha, beta};
        NoiseSpec noise = NoiseSpec::none();
        BoundReport report;
        if (structured) {
          const double sigma2 = unit(rng);
          noise = NoiseSpec::structured(sigma2, inst.problem.eigenvalues());
          report = function_bound_structured(
              pair, L, r, noise.trace_c_hinv(inst.problem.eigenvalues()), N);
        } else {
          const double trace_C = unit(rng);
          noise = NoiseSpec::isotropic(trace_C, d);
          report = function_bound_unstructured(pair, L, r, noise.trace_c(), N);
        }
        const double empirical =
            expected_excess(inst.problem, inst.theta0, pair, noise, N).value;
        row = {alpha, beta, N, empirical, report.value,
               report.value - empirical, report.preconditions_met};
        break;
      }
    }
    rows.push_back(row);
  }
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    if (!out)
      throw std::runtime_error("cannot open " + out_path + " for writing");
    out.precision(17);
    out << "alpha,beta,N,empirical,bound,slack,preconditions_met\n";
    for (const auto& r : rows)
      out << r.alpha << "," << r.beta << "," << r.N << "," << r.empirical
          << "," << r.bound << "," << r.slack << ","
          << (r.preconditions_met ? 1 : 0) << "\n";
  }
  return rows;
}

std::vector<LowerBoundRow> cmd_lower_bound(const std::string& regime,
                                           const std::vector<std::int64_t>& ns,
                                           const std::string& out_path) {
  if (ns.empty()) throw ConfigError("lower bound requires at least one n");
  const double r = 1.0;
  std::vector<LowerBoundRow> rows;
  for (std::int64_t n : ns) {
    if (n < 1) throw ConfigError("lower bound n must be >= 1");
    LowerBoundRow row;
    row.n = n;
    double alpha, beta, h, scale;
    if (regime == "first") {
      alpha = beta = 0.1;
      h = lower_bound_curvature_first(alpha, n);
      scale = alpha * double(n) * double(n);
      row.limit = 0.5 * r * r;
    } else if (regime == "second") {
      alpha = 1.0 / (double(n) * double(n));
      beta = 1.0;
      h = lower_bound_curvature_second(alpha, beta, n);
      scale = double(n) * (alpha + beta);
      row.limit = second_lower_limit_constant() * r * r;
    } else {
      throw ConfigError("unknown lower bound regime: " + regime);
    }
    const StepPair pair{alpha, beta};
    const double eta = closed_form_eta(classify(pair, h), r, n);
    const double excess = 0.5 * h * (eta / double(n)) * (eta / double(n));
    row.scaled_excess = scale * excess;
    if (!std::isfinite(row.scaled_excess))
      throw DivergenceError("lower bound sequence diverged at n = " +
                            std::to_string(n));
    row.rel_error = std::abs(row.scaled_excess - row.limit) / row.limit;
    rows.push_back(row);
  }
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    if (!out)
      throw std::runtime_error("cannot open " + out_path + " for writing");
    out.precision(17);
    out << "n,scaled_excess,limit,rel_error\n";
    for (const auto& row : rows)
      out << row.n << "," << row.scaled_excess << "," << row.limit << ","
          << row.rel_error << "\n";
  }
  return rows;
}

CompareResult cmd_compare(const CompareConfig& config,
                          const std::string& out_dir) {
  ExperimentConfig exp;
  exp.problem.dim = config.dim;
  exp.problem.spectrum_power = config.spectrum_power;
  exp.problem.r = config.r;
  exp.noise.kind = "structured";
  exp.noise.sigma = config.sigma;
  exp.horizon = config.horizon;
  exp.replications = config.replications;
  exp.seed = config.seed;

  const ResolvedSetup probe =
      resolve_setup(exp.problem, exp.noise, exp.seed);
  const double L = probe.instance.problem.largest();

  AlgorithmConfig unified;
  unified.name = "unified";
  unified.type = "unified";
  unified.schedule.kind = ScheduleKind::OptimalStructured;
  unified.schedule.anytime = config.anytime;
  unified.schedule.horizon = int(config.horizon);

  // Conservative averaged-descent step, half the largest stable constant step.
  AlgorithmConfig avgd;
  avgd.name = "avgd";
  avgd.type = "unified";
  avgd.schedule =
      Schedule::avgd(1.0 / (2.0 * L));

  AlgorithmConfig accgd;
  accgd.name = "accgd";
  accgd.type = "unified";
  accgd.schedule = Schedule::accgd(1.0 / L);

  AlgorithmConfig acsa;
  acsa.name = "acsa";
  acsa.type = "acsa";

  AlgorithmConfig sage;
  sage.name = "sage";
  sage.type = "sage";

  AlgorithmConfig accrda;
  accrda.name = "accrda";
  accrda.type = "accrda";

  exp.algorithms = {unified, avgd, accgd, acsa, sage, accrda};

  CompareResult result;
  result.curves = cmd_run(exp, "");
  for (const AlgorithmCurve& curve : result.curves)
    result.slopes.push_back(fit_last_decade_slope(curve.mean));

  if (!out_dir.empty()) {
    std::ofstream out(out_dir + "/compare.csv");
    if (!out)
      throw std::runtime_error("cannot open " + out_dir +
                               "/compare.csv for writing");
    out.precision(17);
    out << "n";
    for (const auto& curve : result.curves)
      out << "," << curve.name << "_mean," << curve.name << "_stderr";
    out << "\n";
    const size_t len = result.curves.front().mean.size();
    for (size_t n = 0; n < len; ++n) {
      out << n;
      for (const auto& curve : result.curves)
        out << "," << curve.mean[n] << "," << curve.stderr_[n];
      out << "\n";
    }
    std::ofstream slopes(out_dir + "/slopes.csv");
    if (!slopes)
      throw std::runtime_error("cannot open " + out_dir +
                               "/slopes.csv for writing");
    slopes.precision(17);
    slopes << "algorithm,last_decade_slope\n";
    for (size_t i = 0; i < result.curves.size(); ++i) {
      slopes << result.curves[i].name << ",";
      if (result.slopes[i])
        slopes << *result.slopes[i];
      else
        slopes << "nan";
      slopes << "\n";
    }
  }
  return result;
}

}  // namespace twostep
