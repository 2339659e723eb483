#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "physnn/errors.hpp"
#include "physnn/kernels.hpp"
#include "physnn/rng.hpp"

using namespace physnn;

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> xs(n);
  for (int i = 0; i < n; ++i) xs[i] = lo + (hi - lo) * i / (n - 1);
  return xs;
}

}  // namespace

TEST_CASE("cosine kernel point values") {
  const Kernel k{Cosine{0.51}};
  CHECK(eval(k, 3.2, 3.2) == 1.0);
  CHECK(eval(Kernel{Cosine{1.0}}, 0.0, kPi) == -1.0);
  // Independent scalar oracle: cos(0.51 * (1 - 3)) = cos(-1.02).
  CHECK(eval(k, 1.0, 3.0) == doctest::Approx(0.52336595125164957).epsilon(1e-15));
  CHECK(eval(k, 1.0, 3.0) == doctest::Approx(std::cos(-1.02)).epsilon(1e-15));
}

TEST_CASE("squared exponential point values") {
  const Kernel k{SquaredExponential{2.0, 3.0}};
  CHECK(eval(k, 0.7, 0.7) == 3.0);
  CHECK(eval(k, 0.0, 2.0) == doctest::Approx(3.0 * std::exp(-0.5)).epsilon(1e-15));
}

TEST_CASE("eval rejects non-finite arguments") {
  const Kernel k{Cosine{1.0}};
  CHECK_THROWS_AS(eval(k, std::nan(""), 0.0), EvaluationError);
  CHECK_THROWS_AS(eval(k, 0.0, INFINITY), EvaluationError);
}

TEST_CASE("gram assembly") {
  const Kernel cosine{Cosine{0.51}};
  const auto pts = linspace(0.0, 4.0 * kPi, 9);
  const Eigen::MatrixXd g = gram(cosine, pts);
  for (int i = 0; i < 9; ++i) CHECK(g(i, i) == 1.0);

  const Eigen::MatrixXd single = gram(cosine, {2.5});
  CHECK(single.rows() == 1);
  CHECK(single(0, 0) == 1.0);

  CHECK_THROWS_AS(gram(cosine, {}), ConfigError);

  // Positive-definite baseline: every eigenvalue of the SE Gram is > 0.
  const Eigen::MatrixXd se = gram(Kernel{SquaredExponential{1.0, 1.0}}, linspace(0.0, 1.0, 5));
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(se, Eigen::EigenvaluesOnly);
  CHECK(es.eigenvalues().minCoeff() > 0.0);
}

TEST_CASE("kernel symmetry") {
  CounterRng rng(2024);
  const Kernel cosine{Cosine{0.51}};
  const Kernel se{SquaredExponential{1.0, 1.0}};
  const Kernel mercer = cosine_mercer_pair(0.51);
  for (int i = 0; i < 1000; ++i) {
    const double x = rng.uniform(0.0, 4.0 * kPi);
    const double y = rng.uniform(0.0, 4.0 * kPi);
    CHECK(eval(cosine, x, y) == eval(cosine, y, x));
    CHECK(eval(se, x, y) == eval(se, y, x));
    CHECK(std::abs(eval(mercer, x, y) - eval(mercer, y, x)) < 1e-12);
  }
  // The nested-stencil path is symmetric only up to finite-difference noise.
  const Kernel tse = operator_transform(LinearOperator::helmholtz1d(0.51), se);
  for (int i = 0; i < 50; ++i) {
    const double x = rng.uniform(0.0, 4.0);
    const double y = rng.uniform(0.0, 4.0);
    CHECK(std::abs(eval(tse, x, y) - eval(tse, y, x)) < 1e-6);
  }
}

TEST_CASE("cosine kernel is stationary") {
  CounterRng rng(77);
  const Kernel k{Cosine{0.51}};
  for (int i = 0; i < 1000; ++i) {
    const double x = rng.uniform(0.0, 4.0 * kPi);
    const double y = rng.uniform(0.0, 4.0 * kPi);
    const double shift = rng.uniform(-10.0, 10.0);
    CHECK(std::abs(eval(k, x + shift, y + shift) - eval(k, x, y)) < 1e-12);
  }
}

TEST_CASE("jittered cholesky on a rank deficient gram") {
  // The cosine Gram has rank 2, so a bare factorization cannot succeed;
  // escalation must settle on a jitter small relative to the unit diagonal.
  CounterRng rng(5);
  std::vector<double> pts(32);
  for (auto& p : pts) p = rng.uniform(0.0, 4.0 * kPi);
  const Eigen::MatrixXd g = gram(Kernel{Cosine{0.51}}, pts);
  const auto res = jittered_cholesky(g);
  CHECK(res.jitter > 0.0);
  CHECK(res.jitter <= 1e-8 * 32);
  const Eigen::MatrixXd recon = res.l * res.l.transpose();
  const Eigen::MatrixXd target = g + res.jitter * Eigen::MatrixXd::Identity(32, 32);
  CHECK((recon - target).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("jittered cholesky reports indefiniteness") {
  Eigen::MatrixXd bad(2, 2);
  bad << 1.0, 2.0, 2.0, 1.0;  // eigenvalues 3 and -1
  try {
    jittered_cholesky(bad);
    FAIL("expected NotPsdError");
  } catch (const NotPsdError& e) {
    CHECK(e.min_eigenvalue == doctest::Approx(-1.0).epsilon(1e-12));
  }
  CHECK_THROWS_AS(jittered_cholesky(Eigen::MatrixXd::Zero(2, 3)), ConfigError);
}

TEST_CASE("mercer sum validation and values") {
  const double a = 0.51;
  std::vector<BasisFunction> pair{{BasisFamily::Sinusoid, 1.0, a, 0.0},
                                  {BasisFamily::Sinusoid, 1.0, a, kPi / 2.0}};

  CHECK_THROWS_AS(mercer_from_basis(pair, Eigen::MatrixXd::Identity(3, 3)), ConfigError);
  Eigen::MatrixXd skew(2, 2);
  skew << 1.0, 0.5, -0.5, 1.0;
  CHECK_THROWS_AS(mercer_from_basis(pair, skew), ConfigError);

  const Kernel k = mercer_from_basis(pair, Eigen::MatrixXd::Identity(2, 2));
  // Pythagorean diagonal and agreement with the closed form off it.
  CHECK(eval(k, 1.3, 1.3) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(std::abs(eval(k, 1.0, 3.0) - eval(Kernel{Cosine{a}}, 1.0, 3.0)) < 1e-12);

  const Kernel zero = mercer_from_basis({{BasisFamily::Sinusoid, 1.0, a, 0.0}},
                                        Eigen::MatrixXd::Zero(1, 1));
  CHECK(eval(zero, 0.4, 2.2) == 0.0);
}

TEST_CASE("mercer pair matches the cosine kernel on a grid") {
  const Kernel pair = cosine_mercer_pair(0.51);
  const Kernel cosine{Cosine{0.51}};
  const auto xs = linspace(0.0, 4.0 * kPi, 50);
  double worst = 0.0;
  for (const double x : xs) {
    for (const double y : xs) worst = std::max(worst, std::abs(eval(pair, x, y) - eval(cosine, x, y)));
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("basis transform under the operators") {
  const BasisFunction phi{BasisFamily::Sinusoid, 2.0, 3.0, 0.4};
  const auto same = transform_basis(LinearOperator::identity(), phi);
  CHECK(same.amplitude == 2.0);
  const auto lap = transform_basis(LinearOperator::laplace1d(), phi);
  CHECK(lap.amplitude == -18.0);
  CHECK(lap.frequency == 3.0);
  const auto helm = transform_basis(LinearOperator::helmholtz1d(1.0), phi);
  CHECK(helm.amplitude == doctest::Approx(2.0 * (1.0 - 9.0)).epsilon(1e-15));
}

TEST_CASE("operator transform annihilates the matched kernel") {
  const auto op = LinearOperator::helmholtz1d(0.51);
  const auto xs = linspace(0.0, 4.0 * kPi, 20);

  // Closed-form base goes through nested stencils.
  const Kernel fd = operator_transform(op, Kernel{Cosine{0.51}});
  double worst_fd = 0.0;
  for (const double x : xs) {
    for (const double y : xs) worst_fd = std::max(worst_fd, std::abs(eval(fd, x, y)));
  }
  CHECK(worst_fd < 1e-4);

  // The expansion transforms exactly: amplitudes become nu^2 - nu^2 = 0.
  const Kernel exact = operator_transform(op, cosine_mercer_pair(0.51));
  double worst_exact = 0.0;
  for (const double x : xs) {
    for (const double y : xs) worst_exact = std::max(worst_exact, std::abs(eval(exact, x, y)));
  }
  CHECK(worst_exact < 1e-9);
}

TEST_CASE("identity transform returns the kernel unchanged") {
  const Kernel se{SquaredExponential{1.0, 1.0}};
  const Kernel same = operator_transform(LinearOperator::identity(), se);
  for (const double x : linspace(0.0, 3.0, 7)) {
    CHECK(eval(same, x, 0.5) == eval(se, x, 0.5));
  }
}

TEST_CASE("transformed squared exponential against the closed form") {
  // (d^2/dx^2 + nu^2)(d^2/dx'^2 + nu^2) exp(-(x-x')^2/2) at x = x' is
  // 3 - 2 nu^2 + nu^4 = 2.54745201 for nu = 0.51 (exact decimal).
  const auto op = LinearOperator::helmholtz1d(0.51);
  const Kernel se{SquaredExponential{1.0, 1.0}};
  const double coarse = eval(operator_transform(op, se, {1e-2}), 0.0, 0.0);
  const double fine = eval(operator_transform(op, se, {5e-3}), 0.0, 0.0);
  CHECK(std::abs(coarse - 2.54745201) < 5e-4);
  CHECK(std::abs(fine - 2.54745201) < 2e-4);
}

TEST_CASE("annihilation residual on the diagonal") {
  const auto xs = linspace(0.0, 4.0 * kPi, 50);
  for (const double alpha : {0.3, 0.51, 1.0, 2.0}) {
    const auto op = LinearOperator::helmholtz1d(alpha);
    CHECK(boogaart_residual(op, Kernel{Cosine{alpha}}, xs) < 1e-4);
    CHECK(boogaart_residual(op, cosine_mercer_pair(alpha), xs) < 1e-9);
  }
  const auto op51 = LinearOperator::helmholtz1d(0.51);
  CHECK(boogaart_residual(op51, Kernel{SquaredExponential{1.0, 1.0}}, xs) > 0.01);
  CHECK(boogaart_residual(LinearOperator::identity(), Kernel{Cosine{0.51}}, xs) == 1.0);
}

TEST_CASE("kernel json round trip") {
  const Kernel c = kernel_from_json(R"({"variant": "cosine", "alpha": 0.51})");
  CHECK(std::get<Cosine>(c.v).alpha == 0.51);
  const Kernel back = kernel_from_json(to_json(c));
  CHECK(std::get<Cosine>(back.v).alpha == 0.51);

  const Kernel se = kernel_from_json(
      R"({"variant": "squared_exponential", "lengthscale": 2.0, "variance": 0.5})");
  CHECK(std::get<SquaredExponential>(se.v).lengthscale == 2.0);
  CHECK(std::get<SquaredExponential>(se.v).variance == 0.5);

  CHECK_THROWS_AS(kernel_from_json("[]"), ConfigError);
  CHECK_THROWS_AS(kernel_from_json(R"({"variant": "matern"})"), ConfigError);
  CHECK_THROWS_AS(kernel_from_json(R"({"variant": "cosine"})"), ConfigError);
  CHECK_THROWS_AS(
      kernel_from_json(R"({"variant": "squared_exponential", "lengthscale": -1, "variance": 1})"),
      ConfigError);
  CHECK_THROWS_AS(to_json(cosine_mercer_pair(1.0)), ConfigError);
}
