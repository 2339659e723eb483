#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>

#include "physnn/operators.hpp"

namespace physnn {

enum class ActivationKind { Relu, Tanh, Sin };

/// Value and first three derivatives of the activation at one pre-activation.
/// Relu uses the almost-everywhere convention: h'(0) = 0 and h'' = h''' = 0.
struct ActivationDerivs {
  double h = 0.0;
  double h1 = 0.0;
  double h2 = 0.0;
  double h3 = 0.0;
};

ActivationDerivs activation_derivs(ActivationKind kind, double z);
double activation(ActivationKind kind, double z);

struct TrainableMask {
  bool w = true;
  bool a = true;
  bool v = true;
  bool b = true;
};

/// f(x) = sum_k v_k h(w_k x + a_k) + b. A plain parameter container; all
/// evaluation is through the free functions below, which never mutate it.
struct SingleLayerNet {
  ActivationKind activation = ActivationKind::Relu;
  Eigen::VectorXd w;
  Eigen::VectorXd a;
  Eigen::VectorXd v;
  double b = 0.0;
  TrainableMask trainable{};

  Eigen::Index n_hidden() const { return w.size(); }
};

/// Gradient w.r.t. every parameter group. Entries for frozen groups are
/// still filled in; optimizers consult the net's trainable mask.
struct ParamGradient {
  Eigen::VectorXd d_w;
  Eigen::VectorXd d_a;
  Eigen::VectorXd d_v;
  double d_b = 0.0;
};

ParamGradient zero_gradient(Eigen::Index n_hidden);

/// Evaluation and exact derivatives. Sums run left to right over neurons so
/// results are bitwise reproducible.
double forward(const SingleLayerNet& net, double x);

/// d^2f/dx^2 = sum_k v_k w_k^2 h''(w_k x + a_k), exactly.
double forward_dx2(const SingleLayerNet& net, double x);

/// Gradient of upstream * f(x) w.r.t. (w, a, v, b).
ParamGradient grad_params(const SingleLayerNet& net, double x, double upstream);

/// Gradient of upstream * d^2f/dx^2 w.r.t. (w, a, v, b).
ParamGradient grad_params_of_dx2(const SingleLayerNet& net, double x, double upstream);

/// (O f)(x) with the operator folded into each neuron's term:
/// sum_k v_k (w_k^2 h'' + nu^2 h) + nu^2 b for the Helmholtz operator. When
/// w_k equals nu bit for bit and b = 0 the two halves of every term cancel
/// exactly, so the residual is 0.0 — not merely small.
double pde_residual(const SingleLayerNet& net, const LinearOperator& op, double x);

/// Gradient of upstream * (O f)(x) w.r.t. all parameter groups.
ParamGradient grad_pde_residual(const SingleLayerNet& net, const LinearOperator& op, double x,
                                double upstream);

/// Fresh net with w_k ~ N(0,1), v_k ~ N(0, 1/N), biases a_k uniform on
/// [0, 2 pi) for Sin and N(0,1) otherwise, b = 0; everything trainable.
SingleLayerNet init_net(ActivationKind activation, Eigen::Index n_hidden, std::uint64_t seed);

/// Net that satisfies the Helmholtz equation by construction: Sin activation,
/// every input weight pinned to nu, b pinned to 0, random phases and output
/// weights. learn_frequency unfreezes w (initialized at nu), trading the
/// exact constraint for the ability to recover an unknown wave number.
SingleLayerNet init_constrained_net(double nu, Eigen::Index n_hidden, std::uint64_t seed,
                                    bool learn_frequency = false);

/// Checkpoint: flat JSON with arrays w, a, v, scalar b, activation name and
/// trainable flags. Doubles survive the round trip bitwise.
std::string to_json(const SingleLayerNet& net);
SingleLayerNet net_from_json(const std::string& text);

}  // namespace physnn
