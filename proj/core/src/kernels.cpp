#include "physnn/kernels.hpp"

#include <cmath>
#include <numbers>
#include <utility>

#include "json.hpp"
#include "physnn/errors.hpp"

namespace physnn {

namespace {

void require_finite(double x, double x_prime) {
  if (!std::isfinite(x) || !std::isfinite(x_prime)) {
    throw EvaluationError("kernel arguments must be finite");
  }
}

Eigen::VectorXd basis_values(const std::vector<BasisFunction>& basis, double x) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(basis.size()));
  for (std::size_t i = 0; i < basis.size(); ++i) v[static_cast<Eigen::Index>(i)] = basis[i].value(x);
  return v;
}

double eval_transformed(const OperatorTransformed& t, double x, double x_prime) {
  const auto inner = [&](double s) {
    return apply_fd(
        t.op_xp, [&](double u) { return eval(*t.base, s, u); }, x_prime, t.scheme);
  };
  return apply_fd(t.op_x, inner, x, t.scheme);
}

}  // namespace

double BasisFunction::value(double x) const {
  switch (family) {
    case BasisFamily::Sinusoid:
      return amplitude * std::sin(frequency * x + phase);
  }
  throw EvaluationError("unknown basis family");
}

BasisFunction transform_basis(const LinearOperator& op, const BasisFunction& phi) {
  if (phi.family != BasisFamily::Sinusoid) throw EvaluationError("unknown basis family");
  BasisFunction psi = phi;
  switch (op.kind) {
    case OperatorKind::Identity:
      break;
    case OperatorKind::Laplace1D:
      psi.amplitude = -phi.frequency * phi.frequency * phi.amplitude;
      break;
    case OperatorKind::Helmholtz1D:
      psi.amplitude = (op.nu * op.nu - phi.frequency * phi.frequency) * phi.amplitude;
      break;
  }
  return psi;
}

Kernel mercer_from_basis(std::vector<BasisFunction> basis, Eigen::MatrixXd m) {
  const auto n = static_cast<Eigen::Index>(basis.size());
  if (m.rows() != n || m.cols() != n) {
    throw ConfigError("weight matrix side must equal the basis size");
  }
  if (n > 0 && (m - m.transpose()).cwiseAbs().maxCoeff() > 1e-12) {
    throw ConfigError("weight matrix must be symmetric");
  }
  return Kernel{MercerSum{std::move(basis), std::move(m)}};
}

Kernel cosine_mercer_pair(double alpha) {
  const double half_pi = std::numbers::pi / 2.0;
  std::vector<BasisFunction> basis{{BasisFamily::Sinusoid, 1.0, alpha, 0.0},
                                   {BasisFamily::Sinusoid, 1.0, alpha, half_pi}};
  return mercer_from_basis(std::move(basis), Eigen::MatrixXd::Identity(2, 2));
}

double eval(const Kernel& kernel, double x, double x_prime) {
  require_finite(x, x_prime);
  return std::visit(
      [&](const auto& k) -> double {
        using T = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<T, Cosine>) {
          // |x - x'| keeps k(x,x') and k(x',x) bitwise identical.
          return std::cos(k.alpha * std::abs(x - x_prime));
        } else if constexpr (std::is_same_v<T, SquaredExponential>) {
          const double s = x - x_prime;
          return k.variance * std::exp(-s * s / (2.0 * k.lengthscale * k.lengthscale));
        } else if constexpr (std::is_same_v<T, MercerSum>) {
          return basis_values(k.basis, x).dot(k.m * basis_values(k.basis, x_prime));
        } else {
          return eval_transformed(k, x, x_prime);
        }
      },
      kernel.v);
}

Eigen::MatrixXd gram(const Kernel& kernel, const std::vector<double>& points) {
  if (points.empty()) throw ConfigError("gram matrix needs at least one point");
  const auto n = static_cast<Eigen::Index>(points.size());
  Eigen::MatrixXd g(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      g(i, j) = eval(kernel, points[static_cast<std::size_t>(i)],
                     points[static_cast<std::size_t>(j)]);
    }
  }
  return g;
}

CholeskyResult jittered_cholesky(const Eigen::MatrixXd& g) {
  if (g.rows() != g.cols() || g.rows() == 0) {
    throw ConfigError("factorization needs a non-empty square matrix");
  }
  const double scale = g.trace() / static_cast<double>(g.rows());
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(g.rows(), g.cols());
  double rel = 1e-10;
  while (true) {
    const double jitter = rel * scale;
    Eigen::LLT<Eigen::MatrixXd> llt(g + jitter * id);
    if (llt.info() == Eigen::Success) return {llt.matrixL(), jitter};
    if (rel >= 1e-4) break;
    rel = std::min(rel * 10.0, 1e-4);
  }
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g, Eigen::EigenvaluesOnly);
  throw NotPsdError("matrix is not positive semi-definite within jitter budget",
                    es.eigenvalues().minCoeff());
}

Kernel operator_transform(const LinearOperator& op, const Kernel& kernel,
                          const FdScheme& scheme) {
  if (op.kind == OperatorKind::Identity) return kernel;
  if (const auto* ms = std::get_if<MercerSum>(&kernel.v)) {
    std::vector<BasisFunction> psi;
    psi.reserve(ms->basis.size());
    for (const auto& phi : ms->basis) psi.push_back(transform_basis(op, phi));
    return Kernel{MercerSum{std::move(psi), ms->m}};
  }
  return Kernel{OperatorTransformed{op, op, std::make_shared<const Kernel>(kernel), scheme}};
}

double boogaart_residual(const LinearOperator& op, const Kernel& kernel,
                         const std::vector<double>& points, const FdScheme& scheme) {
  if (points.empty()) throw ConfigError("residual needs at least one point");
  const Kernel transformed = operator_transform(op, kernel, scheme);
  double worst = 0.0;
  for (const double x : points) worst = std::max(worst, std::abs(eval(transformed, x, x)));
  return worst;
}

std::string to_json(const Kernel& kernel) {
  nlohmann::json j;
  if (const auto* c = std::get_if<Cosine>(&kernel.v)) {
    j["variant"] = "cosine";
    j["alpha"] = c->alpha;
  } else if (const auto* se = std::get_if<SquaredExponential>(&kernel.v)) {
    j["variant"] = "squared_exponential";
    j["lengthscale"] = se->lengthscale;
    j["variance"] = se->variance;
  } else {
    throw ConfigError("only closed-form kernels serialize to config fragments");
  }
  return j.dump();
}

Kernel kernel_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("kernel fragment is not valid JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("variant") || !j["variant"].is_string()) {
    throw ConfigError("kernel fragment needs a string field \"variant\"");
  }
  const std::string variant = j["variant"].get<std::string>();
  const auto number = [&](const char* name) {
    if (!j.contains(name) || !j[name].is_number()) {
      throw ConfigError(std::string(variant) + " kernel needs a numeric field \"" + name + "\"");
    }
    return j[name].get<double>();
  };
  if (variant == "cosine") return Kernel{Cosine{number("alpha")}};
  if (variant == "squared_exponential") {
    const double lengthscale = number("lengthscale");
    const double variance = number("variance");
    if (lengthscale <= 0.0 || variance <= 0.0) {
      throw ConfigError("squared_exponential needs positive lengthscale and variance");
    }
    return Kernel{SquaredExponential{lengthscale, variance}};
  }
  throw ConfigError("unknown kernel variant \"" + variant + "\"");
}

}  // namespace physnn
