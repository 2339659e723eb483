#include "physnn/data.hpp"

#include <cmath>

#include "physnn/errors.hpp"
#include "physnn/rng.hpp"

namespace physnn {

Dataset generate(double omega, double phi, Eigen::Index n_points, double noise_frac, double lo,
                 double hi, std::uint64_t seed) {
  if (!std::isfinite(omega) || !std::isfinite(phi)) {
    throw ConfigError("omega and phi must be finite");
  }
  if (n_points < 2) throw ConfigError("n_points must be >= 2");
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) {
    throw ConfigError("domain must satisfy lo < hi");
  }
  if (!(noise_frac >= 0.0) || !std::isfinite(noise_frac)) {
    throw ConfigError("noise_frac must be finite and >= 0");
  }

  Dataset data;
  data.meta = {omega, phi, noise_frac, lo, hi, seed};
  data.xs.resize(n_points);
  data.ys.resize(n_points);
  CounterRng rng(seed);
  const double step = (hi - lo) / static_cast<double>(n_points - 1);
  for (Eigen::Index i = 0; i < n_points; ++i) {
    const double x = lo + step * static_cast<double>(i);
    data.xs[i] = x;
    data.ys[i] = std::sin(omega * x + phi) + noise_frac * rng.normal();
  }
  return data;
}

}  // namespace physnn
