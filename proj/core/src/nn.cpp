#include "physnn/nn.hpp"

#include <cmath>
#include <numbers>

#include "json.hpp"
#include "physnn/errors.hpp"
#include "physnn/rng.hpp"

namespace physnn {

namespace {

void validate(const SingleLayerNet& net) {
  const auto n = net.w.size();
  if (n < 1 || net.a.size() != n || net.v.size() != n) {
    throw ConfigError("parameter vectors must share one length of at least 1");
  }
  if (!net.w.allFinite() || !net.a.allFinite() || !net.v.allFinite() || !std::isfinite(net.b)) {
    throw ConfigError("network parameters must be finite");
  }
}

const char* activation_name(ActivationKind kind) {
  switch (kind) {
    case ActivationKind::Relu:
      return "relu";
    case ActivationKind::Tanh:
      return "tanh";
    case ActivationKind::Sin:
      return "sin";
  }
  throw ConfigError("unknown activation");
}

ActivationKind activation_from_name(const std::string& name) {
  if (name == "relu") return ActivationKind::Relu;
  if (name == "tanh") return ActivationKind::Tanh;
  if (name == "sin") return ActivationKind::Sin;
  throw ConfigError("unknown activation \"" + name + "\"");
}

}  // namespace

ActivationDerivs activation_derivs(ActivationKind kind, double z) {
  switch (kind) {
    case ActivationKind::Relu:
      return z > 0.0 ? ActivationDerivs{z, 1.0, 0.0, 0.0} : ActivationDerivs{0.0, 0.0, 0.0, 0.0};
    case ActivationKind::Tanh: {
      const double t = std::tanh(z);
      const double u = 1.0 - t * t;
      return {t, u, -2.0 * t * u, -2.0 * u * (1.0 - 3.0 * t * t)};
    }
    case ActivationKind::Sin: {
      const double s = std::sin(z);
      const double c = std::cos(z);
      return {s, c, -s, -c};
    }
  }
  throw ConfigError("unknown activation");
}

double activation(ActivationKind kind, double z) {
  switch (kind) {
    case ActivationKind::Relu:
      return z > 0.0 ? z : 0.0;
    case ActivationKind::Tanh:
      return std::tanh(z);
    case ActivationKind::Sin:
      return std::sin(z);
  }
  throw ConfigError("unknown activation");
}

ParamGradient zero_gradient(Eigen::Index n_hidden) {
  return {Eigen::VectorXd::Zero(n_hidden), Eigen::VectorXd::Zero(n_hidden),
          Eigen::VectorXd::Zero(n_hidden), 0.0};
}

double forward(const SingleLayerNet& net, double x) {
  double acc = 0.0;
  for (Eigen::Index k = 0; k < net.n_hidden(); ++k) {
    acc += net.v[k] * activation(net.activation, net.w[k] * x + net.a[k]);
  }
  return acc + net.b;
}

double forward_dx2(const SingleLayerNet& net, double x) {
  double acc = 0.0;
  for (Eigen::Index k = 0; k < net.n_hidden(); ++k) {
    const auto d = activation_derivs(net.activation, net.w[k] * x + net.a[k]);
    acc += net.v[k] * net.w[k] * net.w[k] * d.h2;
  }
  return acc;
}

ParamGradient grad_params(const SingleLayerNet& net, double x, double upstream) {
  ParamGradient g = zero_gradient(net.n_hidden());
  for (Eigen::Index k = 0; k < net.n_hidden(); ++k) {
    const auto d = activation_derivs(net.activation, net.w[k] * x + net.a[k]);
    g.d_v[k] = upstream * d.h;
    g.d_a[k] = upstream * net.v[k] * d.h1;
    g.d_w[k] = upstream * net.v[k] * d.h1 * x;
  }
  g.d_b = upstream;
  return g;
}

ParamGradient grad_params_of_dx2(const SingleLayerNet& net, double x, double upstream) {
  ParamGradient g = zero_gradient(net.n_hidden());
  for (Eigen::Index k = 0; k < net.n_hidden(); ++k) {
    const double wk = net.w[k];
    const auto d = activation_derivs(net.activation, wk * x + net.a[k]);
    g.d_v[k] = upstream * wk * wk * d.h2;
    g.d_a[k] = upstream * net.v[k] * wk * wk * d.h3;
    g.d_w[k] = upstream * net.v[k] * (2.0 * wk * d.h2 + wk * wk * d.h3 * x);
  }
  g.d_b = 0.0;
  return g;
}

double pde_residual(const SingleLayerNet& net, const LinearOperator& op, double x) {
  switch (op.kind) {
    case OperatorKind::Identity:
      return forward(net, x);
    case OperatorKind::Laplace1D:
      return forward_dx2(net, x);
    case OperatorKind::Helmholtz1D:
      break;
  }
  const double nu2 = op.nu * op.nu;
  double acc = 0.0;
  for (Eigen::Index k = 0; k < net.n_hidden(); ++k) {
    const auto d = activation_derivs(net.activation, net.w[k] * x + net.a[k]);
    // w_k^2 h'' + nu^2 h: for Sin with w_k == nu this is nu^2(-h) + nu^2 h,
    // two products of identical magnitude and opposite sign — exactly zero.
    acc += net.v[k] * (net.w[k] * net.w[k] * d.h2 + nu2 * d.h);
  }
  return acc + nu2 * net.b;
}

ParamGradient grad_pde_residual(const SingleLayerNet& net, const LinearOperator& op, double x,
                                double upstream) {
  switch (op.kind) {
    case OperatorKind::Identity:
      return grad_params(net, x, upstream);
    case OperatorKind::Laplace1D:
      return grad_params_of_dx2(net, x, upstream);
    case OperatorKind::Helmholtz1D:
      break;
  }
  const double nu2 = op.nu * op.nu;
  ParamGradient g = zero_gradient(net.n_hidden());
  for (Eigen::Index k = 0; k < net.n_hidden(); ++k) {
    const double wk = net.w[k];
    const auto d = activation_derivs(net.activation, wk * x + net.a[k]);
    g.d_v[k] = upstream * (wk * wk * d.h2 + nu2 * d.h);
    g.d_a[k] = upstream * net.v[k] * (wk * wk * d.h3 + nu2 * d.h1);
    g.d_w[k] = upstream * net.v[k] * (2.0 * wk * d.h2 + (wk * wk * d.h3 + nu2 * d.h1) * x);
  }
  g.d_b = upstream * nu2;
  return g;
}

SingleLayerNet init_net(ActivationKind activation, Eigen::Index n_hidden, std::uint64_t seed) {
  if (n_hidden < 1) throw ConfigError("hidden width must be at least 1");
  CounterRng rng(seed);
  SingleLayerNet net;
  net.activation = activation;
  net.w.resize(n_hidden);
  net.a.resize(n_hidden);
  net.v.resize(n_hidden);
  for (Eigen::Index k = 0; k < n_hidden; ++k) net.w[k] = rng.normal();
  for (Eigen::Index k = 0; k < n_hidden; ++k) {
    net.a[k] = activation == ActivationKind::Sin ? rng.uniform(0.0, 2.0 * std::numbers::pi)
                                                 : rng.normal();
  }
  const double sigma_v = 1.0 / std::sqrt(static_cast<double>(n_hidden));
  for (Eigen::Index k = 0; k < n_hidden; ++k) net.v[k] = sigma_v * rng.normal();
  net.b = 0.0;
  return net;
}

SingleLayerNet init_constrained_net(double nu, Eigen::Index n_hidden, std::uint64_t seed,
                                    bool learn_frequency) {
  if (n_hidden < 1) throw ConfigError("hidden width must be at least 1");
  if (!std::isfinite(nu) || nu < 0.0) {
    throw ConfigError("wave number must be finite and non-negative");
  }
  CounterRng rng(seed);
  SingleLayerNet net;
  net.activation = ActivationKind::Sin;
  net.w = Eigen::VectorXd::Constant(n_hidden, nu);
  net.a.resize(n_hidden);
  net.v.resize(n_hidden);
  for (Eigen::Index k = 0; k < n_hidden; ++k) net.a[k] = rng.uniform(0.0, 2.0 * std::numbers::pi);
  const double sigma_v = 1.0 / std::sqrt(static_cast<double>(n_hidden));
  for (Eigen::Index k = 0; k < n_hidden; ++k) net.v[k] = sigma_v * rng.normal();
  net.b = 0.0;
  net.trainable = {learn_frequency, true, true, false};
  return net;
}

std::string to_json(const SingleLayerNet& net) {
  validate(net);
  nlohmann::json j;
  j["activation"] = activation_name(net.activation);
  j["w"] = std::vector<double>(net.w.begin(), net.w.end());
  j["a"] = std::vector<double>(net.a.begin(), net.a.end());
  j["v"] = std::vector<double>(net.v.begin(), net.v.end());
  j["b"] = net.b;
  j["trainable"] = {{"w", net.trainable.w},
                    {"a", net.trainable.a},
                    {"v", net.trainable.v},
                    {"b", net.trainable.b}};
  return j.dump(2);
}

SingleLayerNet net_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("checkpoint is not valid JSON: ") + e.what());
  }
  SingleLayerNet net;
  try {
    net.activation = activation_from_name(j.at("activation").get<std::string>());
    const auto w = j.at("w").get<std::vector<double>>();
    const auto a = j.at("a").get<std::vector<double>>();
    const auto v = j.at("v").get<std::vector<double>>();
    net.w = Eigen::Map<const Eigen::VectorXd>(w.data(), static_cast<Eigen::Index>(w.size()));
    net.a = Eigen::Map<const Eigen::VectorXd>(a.data(), static_cast<Eigen::Index>(a.size()));
    net.v = Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
    net.b = j.at("b").get<double>();
    const auto& t = j.at("trainable");
    net.trainable = {t.at("w").get<bool>(), t.at("a").get<bool>(), t.at("v").get<bool>(),
                     t.at("b").get<bool>()};
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed checkpoint: ") + e.what());
  }
  validate(net);
  return net;
}

}  // namespace physnn
