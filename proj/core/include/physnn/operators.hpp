#pragma once

#include <cmath>
#include <functional>
#include <string>
#include <variant>
#include <vector>

namespace physnn {

enum class OperatorKind { Identity, Laplace1D, Helmholtz1D };

/// A linear differential operator acting on scalar functions of one variable.
/// Plain value type: the only constant it carries is the Helmholtz wave
/// number, which is ignored by the other kinds.
struct LinearOperator {
  OperatorKind kind = OperatorKind::Identity;
  double nu = 0.0;

  static LinearOperator identity() { return {OperatorKind::Identity, 0.0}; }
  static LinearOperator laplace1d() { return {OperatorKind::Laplace1D, 0.0}; }
  static LinearOperator helmholtz1d(double nu);
};

enum class FdOrder { Second };

/// Central finite-difference scheme used by the generic operator fallback.
struct FdScheme {
  double step = 1e-4;
  FdOrder order = FdOrder::Second;
};

/// a * sin(freq * x + phase)
struct Sinusoid {
  double amplitude = 1.0;
  double freq = 1.0;
  double phase = 0.0;

  double value(double x) const { return amplitude * std::sin(freq * x + phase); }
  double d1(double x) const { return amplitude * freq * std::cos(freq * x + phase); }
  double d2(double x) const { return -freq * freq * value(x); }
};

/// coeffs[k] * x^k, evaluated by Horner's rule.
struct Polynomial {
  std::vector<double> coeffs;

  double value(double x) const;
  double d1(double x) const;
  double d2(double x) const;
};

/// amplitude * exp(rate * x)
struct Exponential {
  double amplitude = 1.0;
  double rate = 1.0;

  double value(double x) const { return amplitude * std::exp(rate * x); }
  double d1(double x) const { return rate * value(x); }
  double d2(double x) const { return rate * rate * value(x); }
};

/// Closed family of functions with hand-coded exact derivatives. Closed by
/// construction: every alternative is handled, so the analytic path cannot
/// meet an unsupported function.
using AnalyticFunction = std::variant<Sinusoid, Polynomial, Exponential>;

double eval(const AnalyticFunction& f, double x);
double eval_d1(const AnalyticFunction& f, double x);
double eval_d2(const AnalyticFunction& f, double x);

/// Applies the operator with a central second-difference stencil.
/// Throws EvaluationError if the function is non-finite at a stencil point,
/// ConfigError if the scheme or operator is malformed.
double apply_fd(const LinearOperator& op, const std::function<double(double)>& f, double x,
                const FdScheme& scheme = {});

/// Applies the operator exactly, using the coded derivatives of the family.
double apply_analytic(const LinearOperator& op, const AnalyticFunction& f, double x);

/// Config-fragment serialization, e.g. {"kind": "helmholtz", "nu": 0.51}.
std::string to_json(const LinearOperator& op);
LinearOperator operator_from_json(const std::string& text);

}  // namespace physnn
