// Acceptance harness: one line per criterion, nonzero exit on any failure.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "physnn/csv.hpp"
#include "physnn/data.hpp"
#include "physnn/gp.hpp"
#include "physnn/kernels.hpp"
#include "physnn/nn.hpp"
#include "physnn/operators.hpp"
#include "physnn/rng.hpp"
#include "physnn/training.hpp"
#include "physnn/width_limit.hpp"

using namespace physnn;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> xs(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    xs[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (n - 1);
  }
  return xs;
}

std::string fmt(double v) { return format_double(v); }

// 1. Exact constraint satisfaction for random fixed-frequency sin networks.
Outcome constraint_satisfaction() {
  const double nu = 0.51;
  const int widths[] = {1, 10, 50, 200};
  const auto xs = linspace(0.0, 4.0 * kPi, 1000);
  double worst_rel = 0.0;
  for (int i = 0; i < 100; ++i) {
    const auto net = init_constrained_net(nu, widths[i % 4], static_cast<std::uint64_t>(i));
    const double scale = net.v.cwiseAbs().sum();
    double worst = 0.0;
    for (const double x : xs) {
      worst = std::max(worst, std::abs(forward_dx2(net, x) + nu * nu * forward(net, x)));
    }
    worst_rel = std::max(worst_rel, worst / scale);
    if (worst > 1e-10 * scale) {
      return {false, "net " + std::to_string(i) + " residual " + fmt(worst) + " > 1e-10 * " +
                         fmt(scale)};
    }
  }
  return {true, "max residual / sum|v| = " + fmt(worst_rel) + " over 100 nets (bound 1e-10)"};
}

// 2. Diagonal annihilation of the transformed kernel, with a negative control.
Outcome kernel_annihilation() {
  const auto xs = linspace(0.0, 4.0 * kPi, 200);
  double worst_analytic = 0.0;
  double worst_fd = 0.0;
  for (const double alpha : {0.3, 0.51, 1.0, 2.0}) {
    const auto op = LinearOperator::helmholtz1d(alpha);
    const double analytic = boogaart_residual(op, cosine_mercer_pair(alpha), xs);
    const double fd = boogaart_residual(op, Kernel{Cosine{alpha}}, xs);
    worst_analytic = std::max(worst_analytic, analytic);
    worst_fd = std::max(worst_fd, fd);
    if (analytic >= 1e-9) {
      return {false, "analytic residual " + fmt(analytic) + " at alpha " + fmt(alpha)};
    }
    if (fd >= 1e-4) return {false, "fd residual " + fmt(fd) + " at alpha " + fmt(alpha)};
  }
  const double control = boogaart_residual(LinearOperator::helmholtz1d(0.51),
                                           Kernel{SquaredExponential{1.0, 1.0}}, xs);
  if (control <= 1e-2) return {false, "negative control " + fmt(control) + " <= 1e-2"};
  return {true, "analytic <= " + fmt(worst_analytic) + ", fd <= " + fmt(worst_fd) +
                    ", se control = " + fmt(control)};
}

// 3. Monte-Carlo covariance matches the cosine kernel and converges.
Outcome width_correspondence() {
  WeightPrior prior;
  prior.w_law = DeltaLaw{0.51};
  prior.a_law = UniformLaw{0.0, 2.0 * kPi};
  prior.sigma_b = 0.0;
  prior.amplitude = std::sqrt(2.0);
  std::vector<std::pair<double, double>> grid;
  for (const double x : linspace(0.0, 4.0 * kPi, 5)) {
    for (const double xp : linspace(0.0, 4.0 * kPi, 5)) grid.emplace_back(x, xp);
  }
  const Kernel target{Cosine{0.51}};
  const auto fixed =
      correspondence_check(ActivationKind::Sin, prior, target, grid, 100000, 2024);
  if (fixed.max_abs_error >= 0.03) {
    return {false, "max_abs_error " + fmt(fixed.max_abs_error) + " >= 0.03 at n = 1e5"};
  }
  double ratio_sum = 0.0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const double coarse =
        correspondence_check(ActivationKind::Sin, prior, target, grid, 1000, seed).max_abs_error;
    const double fine =
        correspondence_check(ActivationKind::Sin, prior, target, grid, 100000, seed)
            .max_abs_error;
    ratio_sum += coarse / fine;
  }
  const double mean_ratio = ratio_sum / 10.0;
  if (mean_ratio < 5.0 || mean_ratio > 20.0) {
    return {false, "mean error ratio " + fmt(mean_ratio) + " outside [5, 20]"};
  }
  return {true, "max_abs_error = " + fmt(fixed.max_abs_error) + " (bound 0.03), mean ratio = " +
                    fmt(mean_ratio) + " (expected ~10)"};
}

// 4. The operator image of the matched neuron family vanishes exactly.
Outcome transformed_zero() {
  WeightPrior prior;
  prior.w_law = DeltaLaw{0.51};
  prior.a_law = UniformLaw{0.0, 2.0 * kPi};
  prior.sigma_b = 0.0;
  prior.amplitude = std::sqrt(2.0);
  const auto op = LinearOperator::helmholtz1d(0.51);
  std::vector<std::pair<double, double>> grid;
  for (const double x : linspace(0.0, 4.0 * kPi, 5)) {
    for (const double xp : linspace(0.0, 4.0 * kPi, 5)) grid.emplace_back(x, xp);
  }
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    for (const std::int64_t n : {1, 100, 10000}) {
      const auto report = transformed_correspondence(op, ActivationKind::Sin, prior, grid, n, seed);
      if (report.mc_estimate.cwiseAbs().maxCoeff() != 0.0) {
        return {false, "nonzero estimate " + fmt(report.mc_estimate.cwiseAbs().maxCoeff()) +
                           " at seed " + std::to_string(seed) + ", n " + std::to_string(n)};
      }
    }
  }
  return {true, "all estimates exactly 0.0 over 25 pairs x 5 seeds x 3 sample counts"};
}

// 5. Analytic objective gradients against central finite differences.
Outcome gradient_fidelity() {
  CounterRng rng(31);
  const auto op = LinearOperator::helmholtz1d(0.51);
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const auto kind = trial % 2 == 0 ? ActivationKind::Sin : ActivationKind::Tanh;
    SingleLayerNet net = init_net(kind, 5, 600 + static_cast<std::uint64_t>(trial));
    const auto data = generate(0.51, 0.50001, 7, 0.2, 0.0, 4.0 * kPi,
                               700 + static_cast<std::uint64_t>(trial));
    const auto pivots = linspace(0.0, 4.0 * kPi, 9);
    const double lambda = rng.uniform(0.0, 1.0);

    const ParamGradient analytic = grad_total_loss(net, op, data, pivots, lambda);
    double num = 0.0;
    double den = 1e-8;
    const double h = 1e-6;
    const auto fd_slot = [&](double* param, double reference) {
      const double saved = *param;
      *param = saved + h;
      const double hi = total_loss(net, op, data, pivots, lambda);
      *param = saved - h;
      const double lo = total_loss(net, op, data, pivots, lambda);
      *param = saved;
      const double fd = (hi - lo) / (2.0 * h);
      num = std::max(num, std::abs(fd - reference));
      den = std::max(den, std::max(std::abs(fd), std::abs(reference)));
    };
    for (Eigen::Index k = 0; k < net.n_hidden(); ++k) {
      fd_slot(&net.w[k], analytic.d_w[k]);
      fd_slot(&net.a[k], analytic.d_a[k]);
      fd_slot(&net.v[k], analytic.d_v[k]);
    }
    fd_slot(&net.b, analytic.d_b);
    const double rel = num / den;
    worst = std::max(worst, rel);
    if (rel >= 1e-4) {
      return {false, "relative gradient error " + fmt(rel) + " on trial " + std::to_string(trial)};
    }
  }
  return {true, "worst relative error = " + fmt(worst) + " over 20 triples (bound 1e-4)"};
}

// 6. Configuration-faithful reproduction: the hard-constrained variant wins.
Outcome experiment_ordering() {
  int beats_informed = 0;
  int beats_vanilla = 0;
  double sum_constrained = 0.0;
  double sum_informed = 0.0;
  double sum_vanilla = 0.0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Dataset data = generate(0.51, 0.50001, 11, 0.2, 0.0, 4.0 * kPi,
                                  derive_seed(seed, "data"));
    const std::uint64_t init_seed = derive_seed(seed, "init");

    TrainConfig base;
    base.optimizer = AdamParams{0.02, 0.9, 0.999, 1e-8};
    base.iterations = 2000;
    base.n_hidden = 50;
    base.pivots = linspace(0.0, 4.0 * kPi, 100);
    base.op = LinearOperator::helmholtz1d(0.51);
    base.seed = init_seed;

    TrainConfig vanilla = base;
    vanilla.variant = Variant::Vanilla;
    vanilla.lambda = 0.0;
    TrainConfig informed = base;
    informed.variant = Variant::PhysicsInformed;
    informed.lambda = 0.1;
    TrainConfig constrained = base;
    constrained.variant = Variant::PhysicsConstrained;
    constrained.lambda = 0.1;

    const auto rv = train(vanilla, data);
    const auto ri = train(informed, data);
    const auto rc = train(constrained, data);

    for (const auto& rec : rc.trace.records) {
      if (rec.physics_loss != 0.0) {
        return {false, "constrained physics loss " + fmt(rec.physics_loss) + " at iteration " +
                           std::to_string(rec.iteration) + ", seed " + std::to_string(seed)};
      }
    }
    const double lc = rc.trace.records.back().data_loss;
    const double li = ri.trace.records.back().data_loss;
    const double lv = rv.trace.records.back().data_loss;
    if (lc <= li) ++beats_informed;
    if (lc <= lv) ++beats_vanilla;
    sum_constrained += lc;
    sum_informed += li;
    sum_vanilla += lv;
  }
  char mean_buf[160];
  std::snprintf(mean_buf, sizeof(mean_buf),
                "; mean final data loss constrained %.3f, informed %.3f, vanilla %.3f",
                sum_constrained / 10.0, sum_informed / 10.0, sum_vanilla / 10.0);
  const std::string detail = "constrained <= informed in " + std::to_string(beats_informed) +
                             "/10, <= vanilla in " + std::to_string(beats_vanilla) +
                             "/10, physics loss exactly 0 throughout" + mean_buf;
  if (beats_informed < 8 || beats_vanilla < 8) return {false, detail};
  return {true, detail};
}

// 7. GP posterior interpolation and prior-sample residual convergence order.
Outcome gp_sanity() {
  const GpModel model{Kernel{Cosine{0.51}}, 0.0};
  const auto train_x = linspace(0.0, 4.0 * kPi, 11);
  Eigen::VectorXd train_y(11);
  for (int i = 0; i < 11; ++i) {
    train_y[i] = std::sin(0.51 * train_x[static_cast<std::size_t>(i)] + 0.5);
  }
  const auto grid = linspace(0.0, 4.0 * kPi, 400);
  const GpPosterior post = posterior(model, train_x, train_y, grid);
  double sup = 0.0;
  for (Eigen::Index i = 0; i < post.mean.size(); ++i) {
    sup = std::max(sup,
                   std::abs(post.mean[i] - std::sin(0.51 * grid[static_cast<std::size_t>(i)] + 0.5)));
  }
  if (sup >= 1e-4) return {false, "posterior sup-norm error " + fmt(sup) + " >= 1e-4"};

  const auto op = LinearOperator::helmholtz1d(0.51);
  double ratio_sum = 0.0;
  const int n_seeds = 5;
  double rel[2];
  for (int s = 0; s < n_seeds; ++s) {
    int idx = 0;
    for (const double h : {0.1, 0.05}) {
      const int n = static_cast<int>(4.0 * kPi / h) + 1;
      std::vector<double> pts(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i) pts[static_cast<std::size_t>(i)] = h * i;
      const PriorSampler sampler(model, pts);
      const double max_g = sampler.draw(static_cast<std::uint64_t>(s)).cwiseAbs().maxCoeff();
      rel[idx++] =
          pde_residual_of_sample(sampler, op, pts, static_cast<std::uint64_t>(s)) / max_g;
    }
    ratio_sum += rel[0] / rel[1];
  }
  const double ratio = ratio_sum / n_seeds;
  if (ratio < 3.5 || ratio > 4.5) {
    return {false, "residual ratio " + fmt(ratio) + " outside [3.5, 4.5]"};
  }
  return {true, "sup-norm = " + fmt(sup) + " (bound 1e-4), step-halving ratio = " + fmt(ratio)};
}

// 8. End-to-end determinism of the runner's artifacts.
Outcome run_determinism() {
#ifndef PHYSNN_CLI_PATH
  return {false, "cli binary path not configured"};
#else
  namespace fs = std::filesystem;
  const fs::path base = fs::path("physnn_test_out") / "acceptance_run";
  fs::remove_all(base);
  fs::create_directories(base);
  const std::string dir_a = (base / "a").string();
  const std::string dir_b = (base / "b").string();
  const std::string common = std::string(PHYSNN_CLI_PATH) +
                             " run --iterations 200 --seed 7 --out ";
  if (std::system((common + dir_a + " > " + (base / "a.log").string()).c_str()) != 0) {
    return {false, "first run exited nonzero"};
  }
  if (std::system((common + dir_b + " > " + (base / "b.log").string()).c_str()) != 0) {
    return {false, "second run exited nonzero"};
  }
  const std::vector<std::string> artifacts = {
      "dataset.csv",           "trace_vanilla.csv",      "trace_informed.csv",
      "trace_constrained.csv", "solution_vanilla.csv",   "solution_informed.csv",
      "solution_constrained.csv", "gp.csv",              "correspondence.csv",
      "summary.json",          "solution.svg",           "convergence.svg",
      "gp.svg"};
  for (const auto& name : artifacts) {
    const std::string a = read_text_file((fs::path(dir_a) / name).string());
    const std::string b = read_text_file((fs::path(dir_b) / name).string());
    if (a != b) return {false, name + " differs between identical runs"};
    if (a.empty()) return {false, name + " is empty"};
  }
  return {true, std::to_string(artifacts.size()) + " artifacts bitwise identical across two runs"};
#endif
}

}  // namespace

int main() {
  struct Entry {
    int id;
    const char* name;
    double budget_seconds;  // 0 = no budget
    std::function<Outcome()> fn;
  };
  const std::vector<Entry> entries = {
      {1, "exact constraint satisfaction", 1.0, constraint_satisfaction},
      {2, "kernel annihilation on the diagonal", 1.0, kernel_annihilation},
      {3, "infinite-width correspondence", 30.0, width_correspondence},
      {4, "transformed correspondence vanishes exactly", 0.0, transformed_zero},
      {5, "objective gradient fidelity", 5.0, gradient_fidelity},
      {6, "experiment reproduction ordering", 120.0, experiment_ordering},
      {7, "gp posterior and sample residual order", 5.0, gp_sanity},
      {8, "end-to-end run determinism", 0.0, run_determinism},
  };

  int failures = 0;
  for (const auto& entry : entries) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = entry.fn();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (entry.budget_seconds > 0.0 && elapsed >= entry.budget_seconds && outcome.pass) {
      outcome.pass = false;
      outcome.detail += " [exceeded " + format_double(entry.budget_seconds) + " s budget]";
    }
    if (!outcome.pass) ++failures;
    std::printf("%s  %d  %-45s (%.2f s)  %s\n", outcome.pass ? "PASS" : "FAIL", entry.id,
                entry.name, elapsed, outcome.detail.c_str());
  }
  std::printf("%d/8 criteria passed\n", 8 - failures);
  return failures == 0 ? 0 : 1;
}
