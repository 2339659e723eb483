#pragma once

#include <Eigen/Dense>
#include <cstdint>

namespace physnn {

/// Parameters a dataset was generated from, kept alongside the samples so
/// artifacts can echo their provenance.
struct DatasetMeta {
  double omega = 0.0;
  double phi = 0.0;
  double noise_frac = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  std::uint64_t seed = 0;
};

/// Observations (xs strictly increasing, |xs| == |ys|).
struct Dataset {
  Eigen::VectorXd xs;
  Eigen::VectorXd ys;
  DatasetMeta meta;
};

/// n_points equidistant samples of sin(omega x + phi) on [lo, hi] inclusive,
/// plus i.i.d. Gaussian noise with standard deviation noise_frac (the clean
/// signal has unit amplitude). Deterministic given seed.
Dataset generate(double omega, double phi, Eigen::Index n_points, double noise_frac, double lo,
                 double hi, std::uint64_t seed);

}  // namespace physnn
