#include "physnn/operators.hpp"

#include <cmath>
#include <cstdio>

#include "json.hpp"
#include "physnn/errors.hpp"

namespace physnn {

namespace {

[[noreturn]] void throw_nonfinite(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  throw EvaluationError(std::string("function value is not finite at x = ") + buf);
}

double checked_eval(const std::function<double(double)>& f, double x) {
  const double y = f(x);
  if (!std::isfinite(y)) throw_nonfinite(x);
  return y;
}

void validate(const LinearOperator& op) {
  if (!std::isfinite(op.nu) || op.nu < 0.0) {
    throw ConfigError("operator wave number must be finite and non-negative");
  }
}

void validate(const FdScheme& scheme) {
  if (!std::isfinite(scheme.step) || scheme.step <= 0.0 || scheme.step > 1e-1) {
    throw ConfigError("finite-difference step must lie in (0, 0.1]");
  }
}

}  // namespace

LinearOperator LinearOperator::helmholtz1d(double nu) {
  LinearOperator op{OperatorKind::Helmholtz1D, nu};
  validate(op);
  return op;
}

double Polynomial::value(double x) const {
  double acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
  return acc;
}

double Polynomial::d1(double x) const {
  double acc = 0.0;
  for (std::size_t k = coeffs.size(); k-- > 1;) {
    acc = acc * x + static_cast<double>(k) * coeffs[k];
  }
  return acc;
}

double Polynomial::d2(double x) const {
  double acc = 0.0;
  for (std::size_t k = coeffs.size(); k-- > 2;) {
    acc = acc * x + static_cast<double>(k) * static_cast<double>(k - 1) * coeffs[k];
  }
  return acc;
}

double eval(const AnalyticFunction& f, double x) {
  return std::visit([x](const auto& g) { return g.value(x); }, f);
}

double eval_d1(const AnalyticFunction& f, double x) {
  return std::visit([x](const auto& g) { return g.d1(x); }, f);
}

double eval_d2(const AnalyticFunction& f, double x) {
  return std::visit([x](const auto& g) { return g.d2(x); }, f);
}

double apply_fd(const LinearOperator& op, const std::function<double(double)>& f, double x,
                const FdScheme& scheme) {
  validate(op);
  validate(scheme);
  if (op.kind == OperatorKind::Identity) return checked_eval(f, x);

  const double h = scheme.step;
  const double lo = checked_eval(f, x - h);
  const double mid = checked_eval(f, x);
  const double hi = checked_eval(f, x + h);
  const double second = (lo - 2.0 * mid + hi) / (h * h);
  if (op.kind == OperatorKind::Laplace1D) return second;
  return second + op.nu * op.nu * mid;
}

double apply_analytic(const LinearOperator& op, const AnalyticFunction& f, double x) {
  validate(op);
  switch (op.kind) {
    case OperatorKind::Identity:
      return eval(f, x);
    case OperatorKind::Laplace1D:
      return eval_d2(f, x);
    case OperatorKind::Helmholtz1D:
      return eval_d2(f, x) + op.nu * op.nu * eval(f, x);
  }
  throw EvaluationError("unknown operator kind");
}

std::string to_json(const LinearOperator& op) {
  nlohmann::json j;
  switch (op.kind) {
    case OperatorKind::Identity:
      j["kind"] = "identity";
      break;
    case OperatorKind::Laplace1D:
      j["kind"] = "laplace";
      break;
    case OperatorKind::Helmholtz1D:
      j["kind"] = "helmholtz";
      j["nu"] = op.nu;
      break;
  }
  return j.dump();
}

LinearOperator operator_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("operator fragment is not valid JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string()) {
    throw ConfigError("operator fragment needs a string field \"kind\"");
  }
  const std::string kind = j["kind"].get<std::string>();
  if (kind == "identity") return LinearOperator::identity();
  if (kind == "laplace") return LinearOperator::laplace1d();
  if (kind == "helmholtz") {
    if (!j.contains("nu") || !j["nu"].is_number()) {
      throw ConfigError("helmholtz operator needs a numeric field \"nu\"");
    }
    return LinearOperator::helmholtz1d(j["nu"].get<double>());
  }
  throw ConfigError("unknown operator kind \"" + kind + "\"");
}

}  // namespace physnn
