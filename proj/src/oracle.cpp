#include "twostep/oracle.hpp"

#include <fstream>
#include <sstream>

#include "twostep/random.hpp"

namespace twostep {

namespace {

class ExactOracle final : public GradientOracle {
 public:
  explicit ExactOracle(const QuadraticProblem& problem)
      : problem_(&problem), spec_(NoiseSpec::none()) {}

  Eigen::VectorXd query(const Eigen::VectorXd& point, std::int64_t) override {
    return problem_->gradient(point);
  }

  Eigen::VectorXd noise_at(std::int64_t) override {
    return Eigen::VectorXd::Zero(problem_->dim());
  }

  const NoiseSpec& noise_spec() const override { return spec_; }

 private:
  const QuadraticProblem* problem_;
  NoiseSpec spec_;
};

class AdditiveNoiseOracle final : public GradientOracle {
 public:
  AdditiveNoiseOracle(const QuadraticProblem& problem,
                      Eigen::VectorXd per_mode_variance, std::uint64_t seed)
      : problem_(&problem),
        spec_(NoiseSpec::unstructured(std::move(per_mode_variance))),
        seed_(seed) {
    if (spec_.c.size() != problem.dim())
      throw std::invalid_argument("noise variance dimension mismatch");
    sqrt_c_ = spec_.c.cwiseSqrt();
  }

  Eigen::VectorXd query(const Eigen::VectorXd& point,
                        std::int64_t step) override {
    return problem_->gradient(point) - noise_at(step);
  }

  Eigen::VectorXd noise_at(std::int64_t step) override {
    std::mt19937_64 rng(mix_seed(seed_, std::uint64_t(step)));
    const Eigen::VectorXd g = gaussian_vector(rng, problem_->dim());
    return problem_->from_eigenbasis(sqrt_c_.cwiseProduct(g));
  }

  const NoiseSpec& noise_spec() const override { return spec_; }

 private:
  const QuadraticProblem* problem_;
  NoiseSpec spec_;
  Eigen::VectorXd sqrt_c_;
  std::uint64_t seed_;
};

class SemiStochasticOracle final : public GradientOracle {
 public:
  SemiStochasticOracle(const QuadraticProblem& problem, double sigma,
                       std::uint64_t seed)
      : stream_(problem, sigma, seed),
        spec_(NoiseSpec::structured(sigma * sigma, problem.eigenvalues())) {}

  Eigen::VectorXd query(const Eigen::VectorXd& point,
                        std::int64_t step) override {
    return stream_.problem().gradient(point) - noise_at(step);
  }

  Eigen::VectorXd noise_at(std::int64_t step) override {
    return stream_.residual_at(step) * stream_.input_at(step);
  }

  const NoiseSpec& noise_spec() const override { return spec_; }

 private:
  RegressionStream stream_;
  NoiseSpec spec_;
};

class SgdOracle final : public GradientOracle {
 public:
  explicit SgdOracle(const RegressionStream& stream)
      : stream_(&stream),
        spec_(NoiseSpec::structured(stream.sigma() * stream.sigma(),
                                    stream.problem().eigenvalues())) {}

  Eigen::VectorXd query(const Eigen::VectorXd& point,
                        std::int64_t step) override {
    const Eigen::VectorXd x = stream_->input_at(step);
    return x.dot(point) * x - stream_->output_at(step) * x;
  }

  Eigen::VectorXd noise_at(std::int64_t) override {
    throw std::logic_error("SGD noise depends on the query point");
  }

  const NoiseSpec& noise_spec() const override { return spec_; }

 private:
  const RegressionStream* stream_;
  NoiseSpec spec_;
};

}  // namespace

std::unique_ptr<GradientOracle> exact_oracle(const QuadraticProblem& problem) {
  return std::make_unique<ExactOracle>(problem);
}

std::unique_ptr<GradientOracle> additive_noise_oracle(
    const QuadraticProblem& problem, Eigen::VectorXd per_mode_variance,
    std::uint64_t seed) {
  return std::make_unique<AdditiveNoiseOracle>(
      problem, std::move(per_mode_variance), seed);
}

std::unique_ptr<GradientOracle> ls_semi_stochastic_oracle(
    const QuadraticProblem& problem, double sigma, std::uint64_t seed) {
  if (sigma < 0.0) throw std::invalid_argument("sigma must be >= 0");
  return std::make_unique<SemiStochasticOracle>(problem, sigma, seed);
}

std::unique_ptr<GradientOracle> ls_sgd_oracle(const RegressionStream& stream) {
  return std::make_unique<SgdOracle>(stream);
}

RegressionStream::RegressionStream(const QuadraticProblem& problem,
                                   double sigma, std::uint64_t seed)
    : problem_(&problem), sigma_(sigma), seed_(seed) {
  if (sigma < 0.0) throw std::invalid_argument("sigma must be >= 0");
}

Eigen::VectorXd RegressionStream::input_at(std::int64_t step) const {
  std::mt19937_64 rng(mix_seed(seed_, std::uint64_t(step)));
  const Eigen::VectorXd g = gaussian_vector(rng, problem_->dim());
  return problem_->from_eigenbasis(
      problem_->eigenvalues().cwiseSqrt().cwiseProduct(g));
}

double RegressionStream::residual_at(std::int64_t step) const {
  std::mt19937_64 rng(mix_seed(seed_, std::uint64_t(step)));
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int i = 0; i < problem_->dim(); ++i) normal(rng);  // skip the x draw
  return sigma_ * normal(rng);
}

double RegressionStream::output_at(std::int64_t step) const {
  return problem_->optimum().dot(input_at(step)) + residual_at(step);
}

void RegressionStream::write_csv(const std::string& path,
                                 std::int64_t count) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out.precision(17);
  out << "n";
  for (int i = 0; i < dim(); ++i) out << ",x" << i;
  out << ",y\n";
  for (std::int64_t n = 1; n <= count; ++n) {
    const Eigen::VectorXd x = input_at(n);
    out << n;
    for (int i = 0; i < dim(); ++i) out << "," << x[i];
    out << "," << output_at(n) << "\n";
  }
}

RegressionData read_regression_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::string line;
  if (!std::getline(in, line))
    throw std::runtime_error("empty regression file " + path);
  RegressionData data;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream row(line);
    std::string cell;
    std::vector<double> values;
    while (std::getline(row, cell, ',')) values.push_back(std::stod(cell));
    if (values.size() < 3)
      throw std::runtime_error("malformed regression row in " + path);
    Eigen::VectorXd x =
        Eigen::Map<const Eigen::VectorXd>(values.data() + 1,
                                          long(values.size()) - 2);
    data.inputs.push_back(std::move(x));
    data.outputs.push_back(values.back());
  }
  return data;
}

}  // namespace twostep
