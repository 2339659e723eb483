#include "physnn/width_limit.hpp"

#include <cmath>

#include "physnn/errors.hpp"

namespace physnn {

namespace {

void check_law(const ParamLaw& law, const char* name) {
  if (const auto* d = std::get_if<DeltaLaw>(&law)) {
    if (!std::isfinite(d->value)) throw ConfigError(std::string(name) + ": delta value must be finite");
  } else if (const auto* g = std::get_if<GaussianLaw>(&law)) {
    if (!(g->sigma >= 0.0) || !std::isfinite(g->sigma)) {
      throw ConfigError(std::string(name) + ": gaussian sigma must be finite and >= 0");
    }
  } else if (const auto* u = std::get_if<UniformLaw>(&law)) {
    if (!std::isfinite(u->lo) || !std::isfinite(u->hi) || !(u->lo <= u->hi)) {
      throw ConfigError(std::string(name) + ": uniform bounds must be finite with lo <= hi");
    }
  }
}

void check_prior(const WeightPrior& prior) {
  check_law(prior.w_law, "w_law");
  check_law(prior.a_law, "a_law");
  if (!(prior.sigma_b >= 0.0) || !std::isfinite(prior.sigma_b)) {
    throw ConfigError("sigma_b must be finite and >= 0");
  }
  if (!std::isfinite(prior.amplitude)) throw ConfigError("amplitude must be finite");
}

/// The operator applied analytically to the neuron x -> h(w x + a).
double neuron_image(ActivationKind activation, const LinearOperator& op, double w, double a,
                    double x) {
  const double z = w * x + a;
  switch (op.kind) {
    case OperatorKind::Identity:
      return activation_derivs(activation, z).h;
    case OperatorKind::Laplace1D:
      return w * w * activation_derivs(activation, z).h2;
    case OperatorKind::Helmholtz1D: {
      const auto d = activation_derivs(activation, z);
      // w^2 h'' + nu^2 h: with sin and w == nu the two terms are the same
      // product with opposite signs, so each sample cancels exactly.
      return w * w * d.h2 + op.nu * op.nu * d.h;
    }
  }
  throw ConfigError("unknown operator");
}

/// Fixed-order mean of the per-sample products, anchored at the first sample
/// so that identical samples (delta laws on both parameters) average to the
/// sample itself regardless of n.
double product_mean(ActivationKind activation, const LinearOperator& op, const WeightPrior& prior,
                    double x, double x_prime, std::int64_t n_samples, std::uint64_t seed) {
  CounterRng rng(seed);
  double first = 0.0;
  double acc = 0.0;
  for (std::int64_t i = 0; i < n_samples; ++i) {
    const double w = sample_law(prior.w_law, rng);
    const double a = sample_law(prior.a_law, rng);
    const double s =
        neuron_image(activation, op, w, a, x) * neuron_image(activation, op, w, a, x_prime);
    if (i == 0) {
      first = s;
    } else {
      acc += s - first;
    }
  }
  return first + acc / static_cast<double>(n_samples);
}

double estimate(ActivationKind activation, const LinearOperator& op, const WeightPrior& prior,
                double x, double x_prime, std::int64_t n_samples, std::uint64_t seed) {
  return prior.sigma_b * prior.sigma_b +
         prior.amplitude * prior.amplitude *
             product_mean(activation, op, prior, x, x_prime, n_samples, seed);
}

void check_common(const WeightPrior& prior, std::int64_t n_samples) {
  check_prior(prior);
  if (n_samples < 1) throw ConfigError("n_samples must be >= 1");
}

CorrespondenceReport build_report(ActivationKind activation, const LinearOperator& op,
                                  const WeightPrior& prior, const Kernel* target,
                                  const std::vector<std::pair<double, double>>& grid,
                                  std::int64_t n_samples, std::uint64_t seed) {
  if (grid.empty()) throw ConfigError("grid must be non-empty");
  CorrespondenceReport report;
  report.grid = grid;
  report.n_samples = n_samples;
  report.seed = seed;
  const auto n = static_cast<Eigen::Index>(grid.size());
  report.mc_estimate.resize(n);
  report.kernel_value.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto [x, xp] = grid[static_cast<std::size_t>(i)];
    report.mc_estimate[i] = estimate(activation, op, prior, x, xp, n_samples, seed);
    report.kernel_value[i] = target ? eval(*target, x, xp) : 0.0;
  }
  report.max_abs_error = (report.mc_estimate - report.kernel_value).cwiseAbs().maxCoeff();
  return report;
}

}  // namespace

double sample_law(const ParamLaw& law, CounterRng& rng) {
  if (const auto* d = std::get_if<DeltaLaw>(&law)) return d->value;
  if (const auto* g = std::get_if<GaussianLaw>(&law)) return g->sigma * rng.normal();
  const auto& u = std::get<UniformLaw>(law);
  return rng.uniform(u.lo, u.hi);
}

double mc_covariance(ActivationKind activation, const WeightPrior& prior, double x,
                     double x_prime, std::int64_t n_samples, std::uint64_t seed) {
  check_common(prior, n_samples);
  return estimate(activation, LinearOperator::identity(), prior, x, x_prime, n_samples, seed);
}

CorrespondenceReport correspondence_check(ActivationKind activation, const WeightPrior& prior,
                                          const Kernel& target,
                                          const std::vector<std::pair<double, double>>& grid,
                                          std::int64_t n_samples, std::uint64_t seed) {
  check_common(prior, n_samples);
  return build_report(activation, LinearOperator::identity(), prior, &target, grid, n_samples,
                      seed);
}

CorrespondenceReport transformed_correspondence(const LinearOperator& op,
                                                ActivationKind activation,
                                                const WeightPrior& prior,
                                                const std::vector<std::pair<double, double>>& grid,
                                                std::int64_t n_samples, std::uint64_t seed) {
  check_common(prior, n_samples);
  if (op.kind != OperatorKind::Identity) {
    if (activation != ActivationKind::Sin) {
      throw ConfigError("transformed correspondence under a differential operator requires the "
                        "sin activation");
    }
    if (prior.sigma_b != 0.0) {
      throw ConfigError("transformed correspondence under a differential operator requires "
                        "sigma_b = 0 (the operator image of a constant bias is handled "
                        "separately and must vanish)");
    }
  }
  return build_report(activation, op, prior, nullptr, grid, n_samples, seed);
}

}  // namespace physnn
