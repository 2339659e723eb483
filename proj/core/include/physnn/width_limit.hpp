#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <numbers>
#include <utility>
#include <variant>
#include <vector>

#include "physnn/kernels.hpp"
#include "physnn/nn.hpp"
#include "physnn/operators.hpp"
#include "physnn/rng.hpp"

namespace physnn {

/// Scalar laws for the shared-neuron parameters. Delta consumes no random
/// draws; Gaussian is centered at zero; Uniform draws from [lo, hi).
struct DeltaLaw {
  double value = 0.0;
};
struct GaussianLaw {
  double sigma = 1.0;
};
struct UniformLaw {
  double lo = 0.0;
  double hi = 1.0;
};
using ParamLaw = std::variant<DeltaLaw, GaussianLaw, UniformLaw>;

/// Distribution of the single shared neuron (w, a) plus the output scale.
/// `amplitude` is A, the per-neuron coefficient scale times sqrt(width);
/// `sigma_b` is the output-bias standard deviation.
struct WeightPrior {
  ParamLaw w_law = DeltaLaw{1.0};
  ParamLaw a_law = UniformLaw{0.0, 2.0 * std::numbers::pi};
  double sigma_b = 0.0;
  double amplitude = 1.0;
};

/// Side-by-side Monte-Carlo estimates and target kernel values on a grid of
/// input pairs.
struct CorrespondenceReport {
  std::vector<std::pair<double, double>> grid;
  Eigen::VectorXd mc_estimate;
  Eigen::VectorXd kernel_value;
  double max_abs_error = 0.0;
  std::int64_t n_samples = 0;
  std::uint64_t seed = 0;
};

/// One draw from a scalar law. Delta returns its value without touching the
/// generator, so mixed-law priors keep a stable draw order (w first, then a).
double sample_law(const ParamLaw& law, CounterRng& rng);

/// Monte-Carlo estimate of sigma_b^2 + A^2 * E[h(w x + a) h(w x' + a)] over
/// n_samples i.i.d. draws of (w, a). Deterministic given seed; the estimate
/// for (x', x) with the same seed is bitwise equal because every sample
/// reuses one (w, a) pair across both inputs.
double mc_covariance(ActivationKind activation, const WeightPrior& prior, double x,
                     double x_prime, std::int64_t n_samples, std::uint64_t seed);

/// mc_covariance at every grid pair against eval(target, .).
CorrespondenceReport correspondence_check(ActivationKind activation, const WeightPrior& prior,
                                          const Kernel& target,
                                          const std::vector<std::pair<double, double>>& grid,
                                          std::int64_t n_samples, std::uint64_t seed);

/// Covariance of the operator image of the neuron: the activation is replaced
/// by its analytic image x -> (O h)(x) = w^2 h''(w x + a) [+ nu^2 h(w x + a)]
/// before the product is averaged, and the report compares against the zero
/// kernel. With the identity operator this is mc_covariance bit for bit.
/// Non-identity operators require the sin activation and sigma_b = 0.
CorrespondenceReport transformed_correspondence(const LinearOperator& op,
                                                ActivationKind activation,
                                                const WeightPrior& prior,
                                                const std::vector<std::pair<double, double>>& grid,
                                                std::int64_t n_samples, std::uint64_t seed);

}  // namespace physnn
