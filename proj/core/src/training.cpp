#include "physnn/training.hpp"

#include <cmath>
#include <string>

#include "physnn/errors.hpp"

namespace physnn {

namespace {

void accumulate(ParamGradient& acc, const ParamGradient& g) {
  acc.d_w += g.d_w;
  acc.d_a += g.d_a;
  acc.d_v += g.d_v;
  acc.d_b += g.d_b;
}

void check_optimizer(const OptimizerParams& optimizer) {
  if (const auto* adam = std::get_if<AdamParams>(&optimizer)) {
    if (!(adam->lr > 0.0) || !std::isfinite(adam->lr)) throw ConfigError("adam lr must be > 0");
    if (!(adam->beta1 >= 0.0 && adam->beta1 < 1.0)) throw ConfigError("adam beta1 must be in [0, 1)");
    if (!(adam->beta2 >= 0.0 && adam->beta2 < 1.0)) throw ConfigError("adam beta2 must be in [0, 1)");
    if (!(adam->eps > 0.0)) throw ConfigError("adam eps must be > 0");
  } else if (const auto* sgd = std::get_if<SgdParams>(&optimizer)) {
    if (!(sgd->lr > 0.0) || !std::isfinite(sgd->lr)) throw ConfigError("sgd lr must be > 0");
  }
}

void check_config(const TrainConfig& config) {
  if (config.variant == Variant::Vanilla && config.lambda != 0.0) {
    throw ConfigError("vanilla training requires lambda = 0");
  }
  if (!(config.lambda >= 0.0) || !std::isfinite(config.lambda)) {
    throw ConfigError("lambda must be finite and >= 0");
  }
  if (config.iterations < 0) throw ConfigError("iterations must be >= 0");
  if (config.n_hidden < 1) throw ConfigError("n_hidden must be >= 1");
  if (config.pivots.empty()) throw ConfigError("pivots must be non-empty");
  if (config.variant == Variant::PhysicsConstrained &&
      config.op.kind != OperatorKind::Helmholtz1D) {
    throw ConfigError("the constrained variant needs a wave number: use the helmholtz operator");
  }
  check_optimizer(config.optimizer);
}

SingleLayerNet build_net(const TrainConfig& config) {
  if (config.variant == Variant::PhysicsConstrained) {
    return init_constrained_net(config.op.nu, config.n_hidden, config.seed);
  }
  return init_net(ActivationKind::Relu, config.n_hidden, config.seed);
}

TraceRecord make_record(std::int64_t iteration, const SingleLayerNet& net,
                        const LinearOperator& op, const Dataset& data,
                        const std::vector<double>& pivots, double lambda) {
  TraceRecord rec;
  rec.iteration = iteration;
  rec.data_loss = data_loss(net, data);
  rec.physics_loss = physics_loss(net, op, pivots);
  rec.total_loss = rec.data_loss + lambda * rec.physics_loss;
  if (!std::isfinite(rec.total_loss)) {
    throw DivergenceError("training diverged: non-finite loss at iteration " +
                              std::to_string(iteration),
                          static_cast<int>(iteration));
  }
  return rec;
}

}  // namespace

double data_loss(const SingleLayerNet& net, const Dataset& data) {
  if (data.xs.size() == 0) throw ConfigError("dataset must be non-empty");
  if (data.xs.size() != data.ys.size()) throw ConfigError("dataset xs/ys length mismatch");
  double acc = 0.0;
  for (Eigen::Index d = 0; d < data.xs.size(); ++d) {
    const double r = data.ys[d] - forward(net, data.xs[d]);
    acc += r * r;
  }
  return acc;
}

double physics_loss(const SingleLayerNet& net, const LinearOperator& op,
                    const std::vector<double>& pivots) {
  if (pivots.empty()) throw ConfigError("pivots must be non-empty");
  double acc = 0.0;
  for (const double x : pivots) {
    const double r = pde_residual(net, op, x);
    acc += r * r;
  }
  return acc;
}

double total_loss(const SingleLayerNet& net, const LinearOperator& op, const Dataset& data,
                  const std::vector<double>& pivots, double lambda) {
  double loss = data_loss(net, data);
  if (lambda != 0.0) loss += lambda * physics_loss(net, op, pivots);
  return loss;
}

ParamGradient grad_total_loss(const SingleLayerNet& net, const LinearOperator& op,
                              const Dataset& data, const std::vector<double>& pivots,
                              double lambda) {
  ParamGradient acc = zero_gradient(net.n_hidden());
  for (Eigen::Index d = 0; d < data.xs.size(); ++d) {
    const double r = forward(net, data.xs[d]) - data.ys[d];
    accumulate(acc, grad_params(net, data.xs[d], 2.0 * r));
  }
  if (lambda != 0.0) {
    for (const double x : pivots) {
      const double r = pde_residual(net, op, x);
      accumulate(acc, grad_pde_residual(net, op, x, 2.0 * lambda * r));
    }
  }
  return acc;
}

AdamState AdamState::zeros(Eigen::Index n_hidden) {
  AdamState s;
  s.m_w = Eigen::VectorXd::Zero(n_hidden);
  s.v_w = Eigen::VectorXd::Zero(n_hidden);
  s.m_a = Eigen::VectorXd::Zero(n_hidden);
  s.v_a = Eigen::VectorXd::Zero(n_hidden);
  s.m_v = Eigen::VectorXd::Zero(n_hidden);
  s.v_v = Eigen::VectorXd::Zero(n_hidden);
  return s;
}

namespace {

void adam_update_vector(Eigen::VectorXd& theta, Eigen::VectorXd& m, Eigen::VectorXd& v,
                        const Eigen::VectorXd& g, const AdamParams& p, double bc1, double bc2) {
  m = p.beta1 * m + (1.0 - p.beta1) * g;
  v = p.beta2 * v + (1.0 - p.beta2) * g.cwiseProduct(g);
  theta.array() -= p.lr * (m.array() / bc1) / ((v.array() / bc2).sqrt() + p.eps);
}

void adam_update_scalar(double& theta, double& m, double& v, double g, const AdamParams& p,
                        double bc1, double bc2) {
  m = p.beta1 * m + (1.0 - p.beta1) * g;
  v = p.beta2 * v + (1.0 - p.beta2) * g * g;
  theta -= p.lr * (m / bc1) / (std::sqrt(v / bc2) + p.eps);
}

}  // namespace

void adam_step(SingleLayerNet& net, AdamState& state, const ParamGradient& grads,
               const AdamParams& params) {
  const Eigen::Index n = net.n_hidden();
  if (state.m_w.size() != n || grads.d_w.size() != n || grads.d_a.size() != n ||
      grads.d_v.size() != n) {
    throw ConfigError("adam state/gradient dimensions do not match the network");
  }
  state.t += 1;
  const double bc1 = 1.0 - std::pow(params.beta1, static_cast<double>(state.t));
  const double bc2 = 1.0 - std::pow(params.beta2, static_cast<double>(state.t));
  if (net.trainable.w) adam_update_vector(net.w, state.m_w, state.v_w, grads.d_w, params, bc1, bc2);
  if (net.trainable.a) adam_update_vector(net.a, state.m_a, state.v_a, grads.d_a, params, bc1, bc2);
  if (net.trainable.v) adam_update_vector(net.v, state.m_v, state.v_v, grads.d_v, params, bc1, bc2);
  if (net.trainable.b) adam_update_scalar(net.b, state.m_b, state.v_b, grads.d_b, params, bc1, bc2);
}

void sgd_step(SingleLayerNet& net, const ParamGradient& grads, const SgdParams& params) {
  const Eigen::Index n = net.n_hidden();
  if (grads.d_w.size() != n || grads.d_a.size() != n || grads.d_v.size() != n) {
    throw ConfigError("gradient dimensions do not match the network");
  }
  if (net.trainable.w) net.w -= params.lr * grads.d_w;
  if (net.trainable.a) net.a -= params.lr * grads.d_a;
  if (net.trainable.v) net.v -= params.lr * grads.d_v;
  if (net.trainable.b) net.b -= params.lr * grads.d_b;
}

TrainResult train(const TrainConfig& config, const Dataset& data) {
  check_config(config);
  TrainResult result;
  result.net = build_net(config);
  AdamState adam = AdamState::zeros(config.n_hidden);
  result.trace.records.reserve(static_cast<std::size_t>(config.iterations) + 1);
  result.trace.records.push_back(
      make_record(0, result.net, config.op, data, config.pivots, config.lambda));
  for (std::int64_t iter = 1; iter <= config.iterations; ++iter) {
    const ParamGradient g =
        grad_total_loss(result.net, config.op, data, config.pivots, config.lambda);
    if (const auto* p = std::get_if<AdamParams>(&config.optimizer)) {
      adam_step(result.net, adam, g, *p);
    } else {
      sgd_step(result.net, g, std::get<SgdParams>(config.optimizer));
    }
    result.trace.records.push_back(
        make_record(iter, result.net, config.op, data, config.pivots, config.lambda));
  }
  return result;
}

}  // namespace physnn
