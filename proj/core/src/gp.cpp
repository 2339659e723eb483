#include "physnn/gp.hpp"

#include <cmath>

#include "physnn/errors.hpp"
#include "physnn/rng.hpp"

namespace physnn {

namespace {

void validate(const GpModel& model) {
  if (!std::isfinite(model.noise_variance) || model.noise_variance < 0.0) {
    throw ConfigError("noise variance must be finite and non-negative");
  }
}

Eigen::MatrixXd cross_gram(const Kernel& kernel, const std::vector<double>& xs,
                           const std::vector<double>& ys) {
  Eigen::MatrixXd k(static_cast<Eigen::Index>(xs.size()), static_cast<Eigen::Index>(ys.size()));
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t j = 0; j < ys.size(); ++j) {
      k(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = eval(kernel, xs[i], ys[j]);
    }
  }
  return k;
}

/// L with L L^T = S for symmetric S, rejecting eigenvalues below
/// -1e-8 max_eig. Eigenvalues below 1e-12 max_eig — rounding debris of rank
/// deficiency, which can land on either side of zero — are flattened to zero:
/// a spurious +1e-13 would contribute white noise of magnitude sqrt(1e-13)
/// to every draw, which second differences then blow up by 1/step^2.
Eigen::MatrixXd psd_factor(const Eigen::MatrixXd& s) {
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(s);
  if (es.info() != Eigen::Success) throw EvaluationError("eigendecomposition failed");
  Eigen::VectorXd lambda = es.eigenvalues();
  const double top = std::max(lambda.maxCoeff(), 0.0);
  if (lambda.minCoeff() < -1e-8 * top) {
    throw NotPsdError("covariance is not positive semi-definite", lambda.minCoeff());
  }
  for (Eigen::Index i = 0; i < lambda.size(); ++i) {
    if (lambda[i] < 1e-12 * top) lambda[i] = 0.0;
  }
  return es.eigenvectors() * lambda.cwiseSqrt().asDiagonal();
}

}  // namespace

PriorSampler::PriorSampler(const GpModel& model, const std::vector<double>& points) {
  validate(model);
  if (points.empty()) throw ConfigError("prior sampling needs at least one point");
  if (const auto* ms = std::get_if<MercerSum>(&model.kernel.v)) {
    // G = Phi M Phi^T, so a thin factor Phi L_M with L_M L_M^T = M is exact
    // and keeps the cost linear in the grid size.
    const auto p = static_cast<Eigen::Index>(ms->basis.size());
    Eigen::MatrixXd phi(static_cast<Eigen::Index>(points.size()), p);
    for (std::size_t i = 0; i < points.size(); ++i) {
      for (Eigen::Index j = 0; j < p; ++j) {
        phi(static_cast<Eigen::Index>(i), j) = ms->basis[static_cast<std::size_t>(j)].value(points[i]);
      }
    }
    l_ = phi * psd_factor(ms->m);
  } else {
    l_ = psd_factor(gram(model.kernel, points));
  }
}

Eigen::VectorXd PriorSampler::draw(std::uint64_t seed) const {
  CounterRng rng(seed);
  Eigen::VectorXd z(l_.cols());
  for (Eigen::Index i = 0; i < z.size(); ++i) z[i] = rng.normal();
  return l_ * z;
}

Eigen::VectorXd sample_prior(const GpModel& model, const std::vector<double>& points,
                             std::uint64_t seed) {
  return PriorSampler(model, points).draw(seed);
}

GpPosterior posterior(const GpModel& model, const std::vector<double>& train_x,
                      const Eigen::VectorXd& train_y, const std::vector<double>& query_x) {
  validate(model);
  if (train_x.empty()) throw ConfigError("posterior needs at least one training point");
  if (static_cast<Eigen::Index>(train_x.size()) != train_y.size()) {
    throw ConfigError("training inputs and targets differ in length");
  }
  if (query_x.empty()) throw ConfigError("posterior needs at least one query point");

  Eigen::MatrixXd a = gram(model.kernel, train_x);
  a.diagonal().array() += model.noise_variance;
  const auto chol = jittered_cholesky(a);
  const auto l = chol.l.triangularView<Eigen::Lower>();

  const Eigen::MatrixXd k_star = cross_gram(model.kernel, train_x, query_x);
  const Eigen::VectorXd alpha = l.transpose().solve(l.solve(train_y));
  const Eigen::MatrixXd v = l.solve(k_star);

  GpPosterior post;
  post.mean = k_star.transpose() * alpha;
  Eigen::MatrixXd cov = gram(model.kernel, query_x) - v.transpose() * v;
  cov = 0.5 * (cov + cov.transpose()).eval();
  for (Eigen::Index i = 0; i < cov.rows(); ++i) {
    if (cov(i, i) < 0.0) {
      if (cov(i, i) < -1e-10) {
        throw EvaluationError("posterior variance went negative beyond tolerance");
      }
      cov(i, i) = 0.0;
    }
  }
  post.covariance = std::move(cov);
  return post;
}

double pde_residual_of_sample(const GpModel& model, const LinearOperator& op,
                              const std::vector<double>& points, std::uint64_t seed) {
  return pde_residual_of_sample(PriorSampler(model, points), op, points, seed);
}

double pde_residual_of_sample(const PriorSampler& sampler, const LinearOperator& op,
                              const std::vector<double>& points, std::uint64_t seed) {
  if (points.size() < 5) throw ConfigError("residual grid needs at least 5 points");
  const double h = points[1] - points[0];
  if (!(h > 0.0)) throw ConfigError("residual grid must be strictly increasing");
  for (std::size_t i = 1; i + 1 < points.size(); ++i) {
    if (std::abs(points[i + 1] - points[i] - h) > 1e-8 * h) {
      throw ConfigError("residual grid must be uniformly spaced");
    }
  }

  const Eigen::VectorXd g = sampler.draw(seed);
  if (g.size() != static_cast<Eigen::Index>(points.size())) {
    throw ConfigError("sampler was factored over a different grid");
  }
  double worst = 0.0;
  for (Eigen::Index i = 1; i + 1 < g.size(); ++i) {
    double r = 0.0;
    switch (op.kind) {
      case OperatorKind::Identity:
        r = g[i];
        break;
      case OperatorKind::Laplace1D:
        r = (g[i - 1] - 2.0 * g[i] + g[i + 1]) / (h * h);
        break;
      case OperatorKind::Helmholtz1D:
        r = (g[i - 1] - 2.0 * g[i] + g[i + 1]) / (h * h) + op.nu * op.nu * g[i];
        break;
    }
    worst = std::max(worst, std::abs(r));
  }
  return worst;
}

}  // namespace physnn
