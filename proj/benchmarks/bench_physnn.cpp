#include <benchmark/benchmark.h>

#include <numbers>
#include <vector>

#include "physnn/data.hpp"
#include "physnn/gp.hpp"
#include "physnn/kernels.hpp"
#include "physnn/nn.hpp"
#include "physnn/operators.hpp"
#include "physnn/training.hpp"
#include "physnn/width_limit.hpp"

namespace {

using namespace physnn;

constexpr double kPi = std::numbers::pi;

std::vector<double> uniform_points(int n) {
  std::vector<double> xs(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) xs[static_cast<std::size_t>(i)] = 4.0 * kPi * i / (n - 1);
  return xs;
}

void BM_GramCosine(benchmark::State& state) {
  const Kernel kernel{Cosine{0.51}};
  const auto xs = uniform_points(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(gram(kernel, xs));
  }
}
BENCHMARK(BM_GramCosine)->Arg(64)->Arg(256)->Arg(1024);

void BM_JitteredCholesky(benchmark::State& state) {
  const Kernel kernel{SquaredExponential{1.0, 1.0}};
  const auto xs = uniform_points(static_cast<int>(state.range(0)));
  const Eigen::MatrixXd k = gram(kernel, xs);
  for (auto _ : state) {
    benchmark::DoNotOptimize(jittered_cholesky(k));
  }
}
BENCHMARK(BM_JitteredCholesky)->Arg(64)->Arg(256);

void BM_NetForward(benchmark::State& state) {
  const auto net = init_net(ActivationKind::Sin, state.range(0), 7);
  double x = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(forward(net, x));
    x += 1e-3;
  }
}
BENCHMARK(BM_NetForward)->Arg(50)->Arg(500);

void BM_NetGradTotalLoss(benchmark::State& state) {
  const auto net = init_net(ActivationKind::Sin, state.range(0), 7);
  const auto op = LinearOperator::helmholtz1d(0.51);
  const auto data = generate(0.51, 0.50001, 11, 0.2, 0.0, 4.0 * kPi, 3);
  const auto pivots = uniform_points(100);
  for (auto _ : state) {
    benchmark::DoNotOptimize(grad_total_loss(net, op, data, pivots, 0.1));
  }
}
BENCHMARK(BM_NetGradTotalLoss)->Arg(50)->Arg(500);

void BM_McCovariance(benchmark::State& state) {
  WeightPrior prior;
  prior.w_law = DeltaLaw{0.51};
  prior.a_law = UniformLaw{0.0, 2.0 * kPi};
  prior.amplitude = std::numbers::sqrt2;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        mc_covariance(ActivationKind::Sin, prior, 1.0, 3.0, state.range(0), 11));
  }
}
BENCHMARK(BM_McCovariance)->Arg(1000)->Arg(100000);

void BM_AdamStep(benchmark::State& state) {
  auto net = init_net(ActivationKind::Sin, state.range(0), 7);
  const auto op = LinearOperator::helmholtz1d(0.51);
  const auto data = generate(0.51, 0.50001, 11, 0.2, 0.0, 4.0 * kPi, 3);
  const auto pivots = uniform_points(100);
  const ParamGradient grads = grad_total_loss(net, op, data, pivots, 0.1);
  AdamState adam = AdamState::zeros(net.n_hidden());
  const AdamParams params;
  for (auto _ : state) {
    adam_step(net, adam, grads, params);
    benchmark::DoNotOptimize(net.v.data());
  }
}
BENCHMARK(BM_AdamStep)->Arg(50)->Arg(500);

void BM_PosteriorDenseGrid(benchmark::State& state) {
  const GpModel model{Kernel{Cosine{0.51}}, 0.04};
  const auto data = generate(0.51, 0.50001, 11, 0.2, 0.0, 4.0 * kPi, 3);
  const std::vector<double> train_x(data.xs.data(), data.xs.data() + data.xs.size());
  const auto query = uniform_points(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(posterior(model, train_x, data.ys, query));
  }
}
BENCHMARK(BM_PosteriorDenseGrid)->Arg(400);

}  // namespace

BENCHMARK_MAIN();
