#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "physnn/csv.hpp"
#include "physnn/data.hpp"
#include "physnn/errors.hpp"
#include "physnn/experiment.hpp"
#include "physnn/gp.hpp"
#include "physnn/kernels.hpp"
#include "physnn/operators.hpp"
#include "physnn/width_limit.hpp"

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> equidistant(std::int64_t n, double lo, double hi) {
  std::vector<double> xs(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i) {
    xs[static_cast<std::size_t>(i)] =
        lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  }
  return xs;
}

physnn::WeightPrior matched_prior(double nu) {
  physnn::WeightPrior prior;
  prior.w_law = physnn::DeltaLaw{nu};
  prior.a_law = physnn::UniformLaw{0.0, 2.0 * kPi};
  prior.sigma_b = 0.0;
  prior.amplitude = std::sqrt(2.0);
  return prior;
}

int run_command(const physnn::ExperimentConfig& config) {
  const physnn::ExperimentReport report = physnn::run_experiment(config);
  std::printf("out_dir = %s\n", report.out_dir.c_str());
  std::printf("config = %s\n", report.config_path.c_str());
  std::printf("dataset = %s\n", report.dataset_path.c_str());
  for (const auto& v : report.variants) {
    if (v.diverged) {
      std::printf("%s: diverged at iteration %d\n", v.name.c_str(), v.divergence_iteration);
    } else {
      std::printf("%s: final_data_loss = %s, final_physics_loss = %s\n", v.name.c_str(),
                  physnn::format_double(v.final_data_loss).c_str(),
                  physnn::format_double(v.final_physics_loss).c_str());
    }
  }
  for (const auto& w : report.warnings) std::printf("warning: %s\n", w.c_str());
  std::printf("summary = %s\n", report.summary_path.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"physics-constrained network experiments"};
  app.require_subcommand(1);

  // ------------------------------------------------------------------ run --
  auto* run = app.add_subcommand("run", "generate data, train the variants, write artifacts");
  std::string config_path;
  run->add_option("--config", config_path, "INI configuration file")->check(CLI::ExistingFile);
  double omega = 0.0;
  auto* omega_opt = run->add_option("--omega", omega, "data frequency override");
  double lambda = 0.0;
  auto* lambda_opt = run->add_option("--lambda", lambda, "physics weight override");
  std::int64_t iterations = 0;
  auto* iterations_opt = run->add_option("--iterations", iterations, "optimizer steps override");
  std::uint64_t seed = 0;
  auto* seed_opt = run->add_option("--seed", seed, "global seed override");
  std::string variant;
  auto* variant_opt =
      run->add_option("--variant", variant, "all, vanilla, informed, or constrained");
  std::string out_dir;
  auto* out_opt = run->add_option("--out", out_dir, "output directory override");

  // ---------------------------------------------------- check-correspondence --
  auto* corr = app.add_subcommand(
      "check-correspondence",
      "compare the wide-network covariance estimate against the cosine kernel");
  double corr_nu = 0.51;
  corr->add_option("--nu", corr_nu, "kernel and neuron frequency");
  std::int64_t corr_samples = 100000;
  corr->add_option("--samples", corr_samples, "Monte-Carlo samples");
  std::uint64_t corr_seed = 0;
  corr->add_option("--seed", corr_seed, "sampling seed");
  std::int64_t corr_side = 5;
  corr->add_option("--grid-side", corr_side, "points per axis of the pair grid");
  double corr_lo = 0.0, corr_hi = 4.0 * kPi;
  corr->add_option("--lo", corr_lo, "grid lower bound");
  corr->add_option("--hi", corr_hi, "grid upper bound");
  std::string corr_out;
  corr->add_option("--out", corr_out, "write the pairwise report CSV here");

  // ------------------------------------------------------------ gp-posterior --
  auto* gp = app.add_subcommand("gp-posterior",
                                "condition a cosine-kernel GP on generated data");
  double gp_nu = 0.51;
  gp->add_option("--nu", gp_nu, "kernel frequency");
  double gp_noise = 0.0;
  gp->add_option("--noise-variance", gp_noise, "observation noise variance");
  std::int64_t gp_points = 11;
  gp->add_option("--n-points", gp_points, "observation count");
  double gp_omega = 0.51, gp_phi = 0.5;
  gp->add_option("--omega", gp_omega, "data frequency");
  gp->add_option("--phi", gp_phi, "data phase");
  double gp_noise_frac = 0.0;
  gp->add_option("--noise-frac", gp_noise_frac, "data noise standard deviation");
  std::uint64_t gp_seed = 0;
  gp->add_option("--seed", gp_seed, "data seed");
  std::int64_t gp_grid = 400;
  gp->add_option("--grid-points", gp_grid, "dense evaluation grid size");
  std::string gp_out;
  gp->add_option("--out", gp_out, "write the posterior CSV here");

  // ---------------------------------------------------------------- boogaart --
  auto* boog = app.add_subcommand(
      "boogaart", "annihilation residual of the transformed kernel on the diagonal");
  double boog_nu = 0.51;
  boog->add_option("--nu", boog_nu, "operator wave number");
  double boog_alpha = 0.51;
  boog->add_option("--alpha", boog_alpha, "cosine kernel frequency");
  std::int64_t boog_points = 200;
  boog->add_option("--points", boog_points, "diagonal sample count");
  double boog_lo = 0.0, boog_hi = 4.0 * kPi;
  boog->add_option("--lo", boog_lo, "diagonal lower bound");
  boog->add_option("--hi", boog_hi, "diagonal upper bound");
  double boog_step = 1e-2;
  boog->add_option("--step", boog_step, "nested finite-difference step");

  try {
    app.parse(argc, argv);

    if (run->parsed()) {
      physnn::ExperimentConfig config;
      if (!config_path.empty()) {
        config = physnn::parse_config(physnn::read_text_file(config_path));
      }
      if (omega_opt->count() > 0) config.omega = omega;
      if (lambda_opt->count() > 0) config.lambda = lambda;
      if (iterations_opt->count() > 0) config.iterations = iterations;
      if (seed_opt->count() > 0) config.seed = seed;
      if (variant_opt->count() > 0) config.variant = variant;
      if (out_opt->count() > 0) config.out_dir = out_dir;
      return run_command(config);
    }

    if (corr->parsed()) {
      std::vector<std::pair<double, double>> pairs;
      for (const double x : equidistant(corr_side, corr_lo, corr_hi)) {
        for (const double xp : equidistant(corr_side, corr_lo, corr_hi)) {
          pairs.emplace_back(x, xp);
        }
      }
      const physnn::CorrespondenceReport report = physnn::correspondence_check(
          physnn::ActivationKind::Sin, matched_prior(corr_nu), physnn::Kernel{physnn::Cosine{corr_nu}},
          pairs, corr_samples, corr_seed);
      std::printf("pairs = %zu\n", report.grid.size());
      std::printf("n_samples = %lld\n", static_cast<long long>(report.n_samples));
      std::printf("max_abs_error = %s\n", physnn::format_double(report.max_abs_error).c_str());
      if (!corr_out.empty()) {
        physnn::CsvTable t;
        t.header = {"x", "x_prime", "mc", "kernel", "abs_error"};
        t.rows.resize(static_cast<Eigen::Index>(pairs.size()), 5);
        for (Eigen::Index i = 0; i < t.rows.rows(); ++i) {
          t.rows(i, 0) = pairs[static_cast<std::size_t>(i)].first;
          t.rows(i, 1) = pairs[static_cast<std::size_t>(i)].second;
          t.rows(i, 2) = report.mc_estimate[i];
          t.rows(i, 3) = report.kernel_value[i];
          t.rows(i, 4) = std::abs(report.mc_estimate[i] - report.kernel_value[i]);
        }
        physnn::write_text_file(corr_out, physnn::to_csv(t));
        std::printf("report = %s\n", corr_out.c_str());
      }
      return 0;
    }

    if (gp->parsed()) {
      const physnn::Dataset data = physnn::generate(gp_omega, gp_phi, gp_points, gp_noise_frac,
                                                    0.0, 4.0 * kPi, gp_seed);
      const physnn::GpModel model{physnn::Kernel{physnn::Cosine{gp_nu}}, gp_noise};
      const std::vector<double> train_x(data.xs.data(), data.xs.data() + data.xs.size());
      const std::vector<double> grid = equidistant(gp_grid, 0.0, 4.0 * kPi);
      const physnn::GpPosterior post = physnn::posterior(model, train_x, data.ys, grid);
      double sup_err = 0.0;
      double max_std = 0.0;
      for (Eigen::Index i = 0; i < post.mean.size(); ++i) {
        const double x = grid[static_cast<std::size_t>(i)];
        sup_err = std::max(sup_err, std::abs(post.mean[i] - std::sin(gp_omega * x + gp_phi)));
        max_std = std::max(max_std, std::sqrt(std::max(post.covariance(i, i), 0.0)));
      }
      std::printf("max_abs_error_vs_truth = %s\n", physnn::format_double(sup_err).c_str());
      std::printf("max_posterior_std = %s\n", physnn::format_double(max_std).c_str());
      if (!gp_out.empty()) {
        physnn::CsvTable t;
        t.header = {"x", "mean", "std"};
        t.rows.resize(static_cast<Eigen::Index>(grid.size()), 3);
        for (Eigen::Index i = 0; i < t.rows.rows(); ++i) {
          t.rows(i, 0) = grid[static_cast<std::size_t>(i)];
          t.rows(i, 1) = post.mean[i];
          t.rows(i, 2) = std::sqrt(std::max(post.covariance(i, i), 0.0));
        }
        physnn::write_text_file(gp_out, physnn::to_csv(t));
        std::printf("posterior = %s\n", gp_out.c_str());
      }
      return 0;
    }

    if (boog->parsed()) {
      const auto op = physnn::LinearOperator::helmholtz1d(boog_nu);
      const std::vector<double> xs = equidistant(boog_points, boog_lo, boog_hi);
      const double fd = physnn::boogaart_residual(op, physnn::Kernel{physnn::Cosine{boog_alpha}},
                                                  xs, physnn::FdScheme{boog_step});
      const double analytic =
          physnn::boogaart_residual(op, physnn::cosine_mercer_pair(boog_alpha), xs);
      std::printf("residual_fd = %s\n", physnn::format_double(fd).c_str());
      std::printf("residual_analytic = %s\n", physnn::format_double(analytic).c_str());
      return 0;
    }
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
