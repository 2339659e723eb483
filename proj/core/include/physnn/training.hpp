#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <variant>
#include <vector>

#include "physnn/data.hpp"
#include "physnn/nn.hpp"
#include "physnn/operators.hpp"

namespace physnn {

/// The three model families compared in the experiment. Vanilla and
/// PhysicsInformed train a ReLU network (the former with no physics term);
/// PhysicsConstrained trains a sin network with frequencies fixed to the
/// operator's wave number and no output bias, so the equation holds by
/// construction.
enum class Variant { Vanilla, PhysicsInformed, PhysicsConstrained };

struct AdamParams {
  double lr = 0.02;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

struct SgdParams {
  double lr = 0.01;
};

using OptimizerParams = std::variant<AdamParams, SgdParams>;

struct TrainConfig {
  Variant variant = Variant::PhysicsConstrained;
  double lambda = 0.0;
  OptimizerParams optimizer = AdamParams{};
  std::int64_t iterations = 2000;
  Eigen::Index n_hidden = 50;
  std::vector<double> pivots;
  LinearOperator op = LinearOperator::helmholtz1d(0.51);
  std::uint64_t seed = 0;
};

struct TraceRecord {
  std::int64_t iteration = 0;
  double data_loss = 0.0;
  double physics_loss = 0.0;
  double total_loss = 0.0;
};

/// One record for the initial parameters plus one per optimizer step.
struct TrainTrace {
  std::vector<TraceRecord> records;
};

struct TrainResult {
  SingleLayerNet net;
  TrainTrace trace;
};

/// Sum of squared errors over the dataset.
double data_loss(const SingleLayerNet& net, const Dataset& data);

/// Sum of squared equation residuals over the pivot points.
double physics_loss(const SingleLayerNet& net, const LinearOperator& op,
                    const std::vector<double>& pivots);

/// data_loss + lambda * physics_loss. With lambda = 0 the physics term is
/// skipped entirely, so the value (and the gradient below) is bitwise
/// identical to the purely data-driven objective.
double total_loss(const SingleLayerNet& net, const LinearOperator& op, const Dataset& data,
                  const std::vector<double>& pivots, double lambda);

/// Gradient of total_loss with respect to all parameter groups, accumulated
/// in a fixed order (data points first, then pivots).
ParamGradient grad_total_loss(const SingleLayerNet& net, const LinearOperator& op,
                              const Dataset& data, const std::vector<double>& pivots,
                              double lambda);

/// First and second moment buffers, one pair per parameter group.
struct AdamState {
  Eigen::VectorXd m_w, v_w, m_a, v_a, m_v, v_v;
  double m_b = 0.0;
  double v_b = 0.0;
  std::int64_t t = 0;
  static AdamState zeros(Eigen::Index n_hidden);
};

/// Bias-corrected update applied only to the net's trainable groups; frozen
/// groups keep both their values and their moment buffers untouched.
void adam_step(SingleLayerNet& net, AdamState& state, const ParamGradient& grads,
               const AdamParams& params);

/// Plain gradient descent on the trainable groups.
void sgd_step(SingleLayerNet& net, const ParamGradient& grads, const SgdParams& params);

/// Full-batch training. Builds the variant's network from config.seed, runs
/// config.iterations optimizer steps, and records losses before the first
/// step and after every step. Throws DivergenceError naming the iteration if
/// the total loss becomes non-finite.
TrainResult train(const TrainConfig& config, const Dataset& data);

}  // namespace physnn
