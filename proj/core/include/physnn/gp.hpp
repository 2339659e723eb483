#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "physnn/kernels.hpp"
#include "physnn/operators.hpp"

namespace physnn {

/// Zero-mean Gaussian process with observation noise y = g(x) + eta.
struct GpModel {
  Kernel kernel;
  double noise_variance = 0.0;
};

struct GpPosterior {
  Eigen::VectorXd mean;
  Eigen::MatrixXd covariance;
};

/// Factors the prior covariance over a fixed point set once so that many
/// seeds can be drawn cheaply. The factor L satisfies L L^T = G exactly up to
/// rounding; it comes from a symmetric eigendecomposition rather than a
/// jittered Cholesky because jitter would overlay white noise of standard
/// deviation sqrt(jitter) on every sample, and grid second differences
/// amplify that noise by 1/step^2 — enough to bury the PDE residual the
/// samples are meant to exhibit. Rank-deficient covariances (the cosine
/// kernel's Gram has rank 2) factor cleanly this way: eigenvalues within
/// -1e-8 * max eigenvalue of zero are clamped to zero, anything lower throws
/// NotPsdError.
class PriorSampler {
 public:
  PriorSampler(const GpModel& model, const std::vector<double>& points);

  /// One draw g = L z with z standard normal from the counter generator;
  /// bitwise reproducible per (model, points, seed).
  Eigen::VectorXd draw(std::uint64_t seed) const;

  const Eigen::MatrixXd& factor() const { return l_; }

 private:
  Eigen::MatrixXd l_;
};

/// Single prior draw; repeated seeds give bitwise identical vectors.
Eigen::VectorXd sample_prior(const GpModel& model, const std::vector<double>& points,
                             std::uint64_t seed);

/// Exact zero-mean conditioning: mean = K_*^T (K + sigma^2 I)^-1 y and
/// cov = K_** - K_*^T (K + sigma^2 I)^-1 K_*, computed with Cholesky solves.
/// The covariance is symmetrized and diagonal entries in [-1e-10, 0) are
/// clamped to zero.
GpPosterior posterior(const GpModel& model, const std::vector<double>& train_x,
                      const Eigen::VectorXd& train_y, const std::vector<double>& query_x);

/// Draws one prior sample on a uniform grid and returns the largest interior
/// |O g| computed with grid second differences. Needs >= 5 uniformly spaced
/// points.
double pde_residual_of_sample(const GpModel& model, const LinearOperator& op,
                              const std::vector<double>& points, std::uint64_t seed);

/// Same, reusing an already-factored sampler over the same grid (the factor
/// is the expensive part when sweeping many seeds).
double pde_residual_of_sample(const PriorSampler& sampler, const LinearOperator& op,
                              const std::vector<double>& points, std::uint64_t seed);

}  // namespace physnn
