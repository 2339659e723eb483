#pragma once

#include <Eigen/Dense>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "physnn/operators.hpp"

namespace physnn {

/// One term of a covariance expansion k(x,x') = sum_ij phi_i(x) m_ij phi_j(x').
/// The family enum leaves room for other bounded bases; only sinusoids are
/// coded, which is the family the differential operators map onto itself.
enum class BasisFamily { Sinusoid };

struct BasisFunction {
  BasisFamily family = BasisFamily::Sinusoid;
  double amplitude = 1.0;
  double frequency = 1.0;
  double phase = 0.0;

  double value(double x) const;
};

/// phi -> O phi. Sinusoids are closed under the supported operators, so the
/// result is exact: identity keeps phi, the Laplacian scales the amplitude by
/// -freq^2, and the Helmholtz operator scales it by nu^2 - freq^2.
BasisFunction transform_basis(const LinearOperator& op, const BasisFunction& phi);

struct Kernel;

/// k(x,x') = cos(alpha (x - x'))
struct Cosine {
  double alpha = 1.0;
};

/// k(x,x') = variance exp(-(x - x')^2 / (2 lengthscale^2))
struct SquaredExponential {
  double lengthscale = 1.0;
  double variance = 1.0;
};

/// k(x,x') = sum_ij phi_i(x) m_ij phi_j(x') with m symmetric PSD.
struct MercerSum {
  std::vector<BasisFunction> basis;
  Eigen::MatrixXd m;
};

/// k~(x,x') = O_x O_x' k(x,x'), evaluated by nesting central stencils.
/// A nested stencil divides by step^4, so it needs a much larger step than a
/// single one: at step = 1e-4 the rounding noise alone reaches O(1), while
/// step = 1e-2 keeps it near 1e-7 with truncation still O(step^2).
struct OperatorTransformed {
  LinearOperator op_x;
  LinearOperator op_xp;
  std::shared_ptr<const Kernel> base;
  FdScheme scheme{1e-2};
};

struct Kernel {
  std::variant<Cosine, SquaredExponential, MercerSum, OperatorTransformed> v;
};

/// Builds a MercerSum after checking that m is square with side |basis| and
/// symmetric within 1e-12; throws ConfigError otherwise.
Kernel mercer_from_basis(std::vector<BasisFunction> basis, Eigen::MatrixXd m);

/// The canonical two-term expansion of the cosine kernel,
/// cos(a(x-x')) = sin(ax)sin(ax') + sin(ax+pi/2)sin(ax'+pi/2), with m = I.
Kernel cosine_mercer_pair(double alpha);

/// Evaluates k(x,x'). Throws EvaluationError on non-finite inputs.
double eval(const Kernel& kernel, double x, double x_prime);

/// G_ij = k(points_i, points_j); every entry computed independently so the
/// result is bitwise reproducible. Throws ConfigError on an empty point list.
Eigen::MatrixXd gram(const Kernel& kernel, const std::vector<double>& points);

struct CholeskyResult {
  Eigen::MatrixXd l;  // lower factor of g + jitter I
  double jitter = 0.0;
};

/// Cholesky with diagonal jitter escalation: start at 1e-10 times the average
/// diagonal, multiply by 10 until the factorization succeeds, cap at 1e-4
/// times the average diagonal. Past the cap, throws NotPsdError carrying the
/// smallest eigenvalue.
CholeskyResult jittered_cholesky(const Eigen::MatrixXd& g);

/// k~ = O_x O_x' k. MercerSum bases are transformed term by term (exact);
/// identity returns the kernel unchanged; everything else nests finite
/// differences with the given scheme.
Kernel operator_transform(const LinearOperator& op, const Kernel& kernel,
                          const FdScheme& scheme = {1e-2});

/// max over x in points of |O_x O_x' k(x,x')| at x' = x: the annihilation
/// residual that is zero exactly when a GP with this covariance obeys O g = 0.
double boogaart_residual(const LinearOperator& op, const Kernel& kernel,
                         const std::vector<double>& points,
                         const FdScheme& scheme = {1e-2});

/// Config-fragment serialization for the closed-form variants, e.g.
/// {"variant": "cosine", "alpha": 0.51}.
std::string to_json(const Kernel& kernel);
Kernel kernel_from_json(const std::string& text);

}  // namespace physnn
