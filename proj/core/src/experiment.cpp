#include "physnn/experiment.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <map>
#include <sstream>

#include "json.hpp"
#include "physnn/csv.hpp"
#include "physnn/data.hpp"
#include "physnn/errors.hpp"
#include "physnn/gp.hpp"
#include "physnn/kernels.hpp"
#include "physnn/rng.hpp"
#include "physnn/svg.hpp"
#include "physnn/training.hpp"
#include "physnn/width_limit.hpp"

namespace physnn {

namespace {

// ----------------------------------------------------------------- config --

std::string trim(const std::string& s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r')) ++b;
  while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) --e;
  return s.substr(b, e - b);
}

double parse_double_value(const std::string& where, const std::string& value) {
  errno = 0;
  const char* begin = value.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0') {
    throw ConfigError("config: " + where + " expects a number, got \"" + value + "\"");
  }
  return v;
}

std::int64_t parse_int_value(const std::string& where, const std::string& value) {
  errno = 0;
  const char* begin = value.c_str();
  char* end = nullptr;
  const long long v = std::strtoll(begin, &end, 10);
  if (end == begin || *end != '\0' || errno == ERANGE) {
    throw ConfigError("config: " + where + " expects an integer, got \"" + value + "\"");
  }
  return v;
}

std::uint64_t parse_u64_value(const std::string& where, const std::string& value) {
  if (!value.empty() && value[0] == '-') {
    throw ConfigError("config: " + where + " expects a non-negative integer, got \"" + value +
                      "\"");
  }
  errno = 0;
  const char* begin = value.c_str();
  char* end = nullptr;
  const unsigned long long v = std::strtoull(begin, &end, 10);
  if (end == begin || *end != '\0' || errno == ERANGE) {
    throw ConfigError("config: " + where + " expects a non-negative integer, got \"" + value +
                      "\"");
  }
  return v;
}

bool parse_bool_value(const std::string& where, const std::string& value) {
  if (value == "true") return true;
  if (value == "false") return false;
  throw ConfigError("config: " + where + " expects true or false, got \"" + value + "\"");
}

using Setter = std::function<void(ExperimentConfig&, const std::string&, const std::string&)>;

Setter set_double(double ExperimentConfig::* field) {
  return [field](ExperimentConfig& c, const std::string& where, const std::string& v) {
    c.*field = parse_double_value(where, v);
  };
}

Setter set_int(std::int64_t ExperimentConfig::* field) {
  return [field](ExperimentConfig& c, const std::string& where, const std::string& v) {
    c.*field = parse_int_value(where, v);
  };
}

Setter set_bool(bool ExperimentConfig::* field) {
  return [field](ExperimentConfig& c, const std::string& where, const std::string& v) {
    c.*field = parse_bool_value(where, v);
  };
}

Setter set_string(std::string ExperimentConfig::* field) {
  return [field](ExperimentConfig& c, const std::string&, const std::string& v) {
    c.*field = v;
  };
}

Setter set_u64(std::uint64_t ExperimentConfig::* field) {
  return [field](ExperimentConfig& c, const std::string& where, const std::string& v) {
    c.*field = parse_u64_value(where, v);
  };
}

const std::map<std::string, std::map<std::string, Setter>>& config_schema() {
  static const std::map<std::string, std::map<std::string, Setter>> schema = {
      {"data",
       {{"omega", set_double(&ExperimentConfig::omega)},
        {"phi", set_double(&ExperimentConfig::phi)},
        {"n_points", set_int(&ExperimentConfig::n_points)},
        {"noise_frac", set_double(&ExperimentConfig::noise_frac)},
        {"lo", set_double(&ExperimentConfig::lo)},
        {"hi", set_double(&ExperimentConfig::hi)}}},
      {"model",
       {{"nu", set_double(&ExperimentConfig::nu)},
        {"n_hidden", set_int(&ExperimentConfig::n_hidden)}}},
      {"train",
       {{"lambda", set_double(&ExperimentConfig::lambda)},
        {"iterations", set_int(&ExperimentConfig::iterations)},
        {"optimizer", set_string(&ExperimentConfig::optimizer)},
        {"lr", set_double(&ExperimentConfig::lr)},
        {"beta1", set_double(&ExperimentConfig::beta1)},
        {"beta2", set_double(&ExperimentConfig::beta2)},
        {"eps", set_double(&ExperimentConfig::eps)},
        {"n_pivots", set_int(&ExperimentConfig::n_pivots)}}},
      {"gp",
       {{"enabled", set_bool(&ExperimentConfig::gp_enabled)},
        {"noise_variance", set_double(&ExperimentConfig::gp_noise_variance)}}},
      {"correspondence",
       {{"enabled", set_bool(&ExperimentConfig::corr_enabled)},
        {"mc_samples", set_int(&ExperimentConfig::mc_samples)},
        {"grid_side", set_int(&ExperimentConfig::corr_grid_side)}}},
      {"output",
       {{"dir", set_string(&ExperimentConfig::out_dir)},
        {"grid_points", set_int(&ExperimentConfig::grid_points)}}},
      {"run",
       {{"seed", set_u64(&ExperimentConfig::seed)},
        {"variant", set_string(&ExperimentConfig::variant)}}},
  };
  return schema;
}

// ------------------------------------------------------------------ runner --

std::vector<double> equidistant(std::int64_t n, double lo, double hi) {
  std::vector<double> xs(static_cast<std::size_t>(n));
  const double step = (hi - lo) / static_cast<double>(n - 1);
  for (std::int64_t i = 0; i < n; ++i) {
    xs[static_cast<std::size_t>(i)] = lo + step * static_cast<double>(i);
  }
  return xs;
}

struct VariantPlan {
  std::string name;
  Variant variant;
  std::string color;
};

std::vector<VariantPlan> selected_variants(const std::string& selection) {
  const VariantPlan vanilla{"vanilla", Variant::Vanilla, "#1f77b4"};
  const VariantPlan informed{"informed", Variant::PhysicsInformed, "#2ca02c"};
  const VariantPlan constrained{"constrained", Variant::PhysicsConstrained, "#d62728"};
  if (selection == "all") return {vanilla, informed, constrained};
  if (selection == "vanilla") return {vanilla};
  if (selection == "informed") return {informed};
  if (selection == "constrained") return {constrained};
  throw ConfigError("config: variant must be one of all, vanilla, informed, constrained; got \"" +
                    selection + "\"");
}

void validate(const ExperimentConfig& config) {
  selected_variants(config.variant);
  if (config.optimizer != "adam" && config.optimizer != "sgd") {
    throw ConfigError("config: optimizer must be adam or sgd, got \"" + config.optimizer + "\"");
  }
  if (config.grid_points < 2) throw ConfigError("config: grid_points must be >= 2");
  if (config.n_pivots < 2) throw ConfigError("config: n_pivots must be >= 2");
  if (config.mc_samples < 1) throw ConfigError("config: mc_samples must be >= 1");
  if (config.corr_grid_side < 1) throw ConfigError("config: grid_side must be >= 1");
  if (!(config.gp_noise_variance >= 0.0) || !std::isfinite(config.gp_noise_variance)) {
    throw ConfigError("config: noise_variance must be finite and >= 0");
  }
  if (config.out_dir.empty()) throw ConfigError("config: output dir must be non-empty");
}

TrainConfig make_train_config(const ExperimentConfig& config, Variant variant,
                              const std::vector<double>& pivots, std::uint64_t init_seed) {
  TrainConfig tc;
  tc.variant = variant;
  tc.lambda = variant == Variant::Vanilla ? 0.0 : config.lambda;
  if (config.optimizer == "adam") {
    tc.optimizer = AdamParams{config.lr, config.beta1, config.beta2, config.eps};
  } else {
    tc.optimizer = SgdParams{config.lr};
  }
  tc.iterations = config.iterations;
  tc.n_hidden = config.n_hidden;
  tc.pivots = pivots;
  tc.op = LinearOperator::helmholtz1d(config.nu);
  tc.seed = init_seed;
  return tc;
}

CsvTable trace_table(const TrainTrace& trace) {
  CsvTable t;
  t.header = {"iter", "data_loss", "physics_loss", "total_loss"};
  t.rows.resize(static_cast<Eigen::Index>(trace.records.size()), 4);
  for (Eigen::Index r = 0; r < t.rows.rows(); ++r) {
    const auto& rec = trace.records[static_cast<std::size_t>(r)];
    t.rows(r, 0) = static_cast<double>(rec.iteration);
    t.rows(r, 1) = rec.data_loss;
    t.rows(r, 2) = rec.physics_loss;
    t.rows(r, 3) = rec.total_loss;
  }
  return t;
}

}  // namespace

ExperimentConfig parse_config(const std::string& text, const ExperimentConfig& base) {
  ExperimentConfig config = base;
  const auto& schema = config_schema();
  std::istringstream stream(text);
  std::string line;
  std::string section;
  int line_no = 0;
  while (std::getline(stream, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#' || t[0] == ';') continue;
    if (t.front() == '[') {
      if (t.back() != ']') {
        throw ConfigError("config: malformed section header at line " + std::to_string(line_no));
      }
      section = trim(t.substr(1, t.size() - 2));
      if (schema.find(section) == schema.end()) {
        throw ConfigError("config: unknown section [" + section + "]");
      }
      continue;
    }
    const std::size_t eq = t.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config: expected key = value at line " + std::to_string(line_no));
    }
    if (section.empty()) {
      throw ConfigError("config: key outside any section at line " + std::to_string(line_no));
    }
    const std::string key = trim(t.substr(0, eq));
    const std::string value = trim(t.substr(eq + 1));
    const auto& keys = schema.at(section);
    const auto it = keys.find(key);
    if (it == keys.end()) {
      throw ConfigError("config: unknown key \"" + key + "\" in section [" + section + "]");
    }
    it->second(config, "[" + section + "] " + key, value);
  }
  return config;
}

std::string echo_config(const ExperimentConfig& c) {
  std::string out;
  const auto kv = [&out](const char* key, const std::string& value) {
    out += key;
    out += " = ";
    out += value;
    out += '\n';
  };
  out += "[data]\n";
  kv("omega", format_double(c.omega));
  kv("phi", format_double(c.phi));
  kv("n_points", std::to_string(c.n_points));
  kv("noise_frac", format_double(c.noise_frac));
  kv("lo", format_double(c.lo));
  kv("hi", format_double(c.hi));
  out += "\n[model]\n";
  kv("nu", format_double(c.nu));
  kv("n_hidden", std::to_string(c.n_hidden));
  out += "\n[train]\n";
  kv("lambda", format_double(c.lambda));
  kv("iterations", std::to_string(c.iterations));
  kv("optimizer", c.optimizer);
  kv("lr", format_double(c.lr));
  kv("beta1", format_double(c.beta1));
  kv("beta2", format_double(c.beta2));
  kv("eps", format_double(c.eps));
  kv("n_pivots", std::to_string(c.n_pivots));
  out += "\n[gp]\n";
  kv("enabled", c.gp_enabled ? "true" : "false");
  kv("noise_variance", format_double(c.gp_noise_variance));
  out += "\n[correspondence]\n";
  kv("enabled", c.corr_enabled ? "true" : "false");
  kv("mc_samples", std::to_string(c.mc_samples));
  kv("grid_side", std::to_string(c.corr_grid_side));
  out += "\n[output]\n";
  kv("dir", c.out_dir);
  kv("grid_points", std::to_string(c.grid_points));
  out += "\n[run]\n";
  kv("seed", std::to_string(c.seed));
  kv("variant", c.variant);
  return out;
}

ExperimentReport run_experiment(const ExperimentConfig& config) {
  validate(config);
  namespace fs = std::filesystem;
  fs::create_directories(config.out_dir);
  const auto path_of = [&config](const std::string& name) {
    return (fs::path(config.out_dir) / name).string();
  };

  ExperimentReport report;
  report.out_dir = config.out_dir;

  report.config_path = path_of("config.ini");
  write_text_file(report.config_path, echo_config(config));

  // Data shared by every variant; initialization seed shared so the
  // comparison starts from the same draw sequence.
  const std::uint64_t data_seed = derive_seed(config.seed, "data");
  const std::uint64_t init_seed = derive_seed(config.seed, "init");
  const std::uint64_t mc_seed = derive_seed(config.seed, "mc");

  const Dataset dataset = generate(config.omega, config.phi, config.n_points, config.noise_frac,
                                   config.lo, config.hi, data_seed);
  {
    CsvTable t;
    t.header = {"x", "y"};
    nlohmann::json meta{{"omega", dataset.meta.omega},     {"phi", dataset.meta.phi},
                        {"noise_frac", dataset.meta.noise_frac}, {"lo", dataset.meta.lo},
                        {"hi", dataset.meta.hi},           {"seed", dataset.meta.seed}};
    t.comments = {meta.dump()};
    t.rows.resize(dataset.xs.size(), 2);
    t.rows.col(0) = dataset.xs;
    t.rows.col(1) = dataset.ys;
    report.dataset_path = path_of("dataset.csv");
    write_text_file(report.dataset_path, to_csv(t));
  }

  const std::vector<double> pivots = equidistant(config.n_pivots, config.lo, config.hi);
  const std::vector<double> grid = equidistant(config.grid_points, config.lo, config.hi);
  const auto truth = [&config](double x) { return std::sin(config.omega * x + config.phi); };

  std::vector<Series> solution_series;
  {
    Series s;
    s.label = "truth";
    s.color = "#000000";
    s.xs = grid;
    s.ys.reserve(grid.size());
    for (const double x : grid) s.ys.push_back(truth(x));
    solution_series.push_back(std::move(s));
  }
  std::vector<Series> convergence_series;

  for (const auto& plan : selected_variants(config.variant)) {
    VariantOutcome outcome;
    outcome.name = plan.name;
    const TrainConfig tc = make_train_config(config, plan.variant, pivots, init_seed);
    try {
      const TrainResult result = train(tc, dataset);

      outcome.trace_path = path_of("trace_" + plan.name + ".csv");
      write_text_file(outcome.trace_path, to_csv(trace_table(result.trace)));

      CsvTable sol;
      sol.header = {"x", "f", "truth"};
      sol.rows.resize(static_cast<Eigen::Index>(grid.size()), 3);
      for (Eigen::Index i = 0; i < sol.rows.rows(); ++i) {
        const double x = grid[static_cast<std::size_t>(i)];
        sol.rows(i, 0) = x;
        sol.rows(i, 1) = forward(result.net, x);
        sol.rows(i, 2) = truth(x);
      }
      outcome.solution_path = path_of("solution_" + plan.name + ".csv");
      write_text_file(outcome.solution_path, to_csv(sol));

      const TraceRecord& last = result.trace.records.back();
      outcome.final_data_loss = last.data_loss;
      outcome.final_physics_loss = last.physics_loss;
      outcome.final_total_loss = last.total_loss;

      Series fit;
      fit.label = plan.name;
      fit.color = plan.color;
      fit.xs = grid;
      for (Eigen::Index i = 0; i < sol.rows.rows(); ++i) fit.ys.push_back(sol.rows(i, 1));
      solution_series.push_back(std::move(fit));

      Series conv;
      conv.label = plan.name;
      conv.color = plan.color;
      for (const auto& rec : result.trace.records) {
        conv.xs.push_back(static_cast<double>(rec.iteration));
        conv.ys.push_back(rec.data_loss);
      }
      convergence_series.push_back(std::move(conv));
    } catch (const DivergenceError& e) {
      outcome.diverged = true;
      outcome.divergence_iteration = e.iteration;
      report.warnings.push_back(plan.name + ": " + e.what());
    }
    report.variants.push_back(std::move(outcome));
  }

  if (config.gp_enabled) {
    const GpModel model{Kernel{Cosine{config.nu}}, config.gp_noise_variance};
    const std::vector<double> train_x(dataset.xs.data(), dataset.xs.data() + dataset.xs.size());
    const GpPosterior post = posterior(model, train_x, dataset.ys, grid);
    CsvTable t;
    t.header = {"x", "mean", "std"};
    t.rows.resize(static_cast<Eigen::Index>(grid.size()), 3);
    for (Eigen::Index i = 0; i < t.rows.rows(); ++i) {
      t.rows(i, 0) = grid[static_cast<std::size_t>(i)];
      t.rows(i, 1) = post.mean[i];
      t.rows(i, 2) = std::sqrt(std::max(post.covariance(i, i), 0.0));
    }
    report.gp_path = path_of("gp.csv");
    write_text_file(report.gp_path, to_csv(t));

    std::vector<Series> band(3);
    band[0].label = "gp mean";
    band[0].color = "#9467bd";
    band[1].label = "mean + 2 std";
    band[1].color = "#bbbbbb";
    band[2].label = "mean - 2 std";
    band[2].color = "#bbbbbb";
    for (Eigen::Index i = 0; i < t.rows.rows(); ++i) {
      const double x = t.rows(i, 0);
      const double m = t.rows(i, 1);
      const double s = t.rows(i, 2);
      band[0].xs.push_back(x);
      band[0].ys.push_back(m);
      band[1].xs.push_back(x);
      band[1].ys.push_back(m + 2.0 * s);
      band[2].xs.push_back(x);
      band[2].ys.push_back(m - 2.0 * s);
    }
    PlotOptions opts;
    opts.title = "gp posterior";
    opts.x_label = "x";
    opts.y_label = "g(x)";
    const SvgResult svg = emit_svg(band, opts);
    for (const auto& w : svg.warnings) report.warnings.push_back("gp.svg: " + w);
    const std::string path = path_of("gp.svg");
    write_text_file(path, svg.document);
    report.svg_paths.push_back(path);
  }

  if (config.corr_enabled) {
    WeightPrior prior;
    prior.w_law = DeltaLaw{config.nu};
    prior.a_law = UniformLaw{0.0, 2.0 * std::numbers::pi};
    prior.sigma_b = 0.0;
    prior.amplitude = std::sqrt(2.0);
    std::vector<std::pair<double, double>> pairs;
    const std::vector<double> side =
        config.corr_grid_side == 1
            ? std::vector<double>{0.5 * (config.lo + config.hi)}
            : equidistant(config.corr_grid_side, config.lo, config.hi);
    for (const double x : side) {
      for (const double xp : side) pairs.emplace_back(x, xp);
    }
    const CorrespondenceReport corr = correspondence_check(
        ActivationKind::Sin, prior, Kernel{Cosine{config.nu}}, pairs, config.mc_samples, mc_seed);
    CsvTable t;
    t.header = {"x", "x_prime", "mc", "kernel", "abs_error"};
    nlohmann::json meta{{"mc_samples", corr.n_samples},
                        {"seed", corr.seed},
                        {"max_abs_error", corr.max_abs_error}};
    t.comments = {meta.dump()};
    t.rows.resize(static_cast<Eigen::Index>(pairs.size()), 5);
    for (Eigen::Index i = 0; i < t.rows.rows(); ++i) {
      t.rows(i, 0) = pairs[static_cast<std::size_t>(i)].first;
      t.rows(i, 1) = pairs[static_cast<std::size_t>(i)].second;
      t.rows(i, 2) = corr.mc_estimate[i];
      t.rows(i, 3) = corr.kernel_value[i];
      t.rows(i, 4) = std::abs(corr.mc_estimate[i] - corr.kernel_value[i]);
    }
    report.correspondence_path = path_of("correspondence.csv");
    write_text_file(report.correspondence_path, to_csv(t));
  }

  if (solution_series.size() > 1) {
    PlotOptions opts;
    opts.title = "learned solutions";
    opts.x_label = "x";
    opts.y_label = "f(x)";
    const SvgResult svg = emit_svg(solution_series, opts);
    for (const auto& w : svg.warnings) report.warnings.push_back("solution.svg: " + w);
    const std::string path = path_of("solution.svg");
    write_text_file(path, svg.document);
    report.svg_paths.push_back(path);
  }
  if (!convergence_series.empty()) {
    PlotOptions opts;
    opts.title = "training convergence";
    opts.x_label = "iteration";
    opts.y_label = "data loss";
    opts.log_y = true;
    const SvgResult svg = emit_svg(convergence_series, opts);
    for (const auto& w : svg.warnings) report.warnings.push_back("convergence.svg: " + w);
    const std::string path = path_of("convergence.svg");
    write_text_file(path, svg.document);
    report.svg_paths.push_back(path);
  }

  {
    nlohmann::json summary;
    summary["seed"] = config.seed;
    summary["variant_selection"] = config.variant;
    nlohmann::json variants = nlohmann::json::array();
    for (const auto& v : report.variants) {
      nlohmann::json entry;
      entry["name"] = v.name;
      entry["diverged"] = v.diverged;
      if (v.diverged) {
        entry["divergence_iteration"] = v.divergence_iteration;
        entry["final_data_loss"] = nullptr;
        entry["final_physics_loss"] = nullptr;
        entry["final_total_loss"] = nullptr;
      } else {
        entry["final_data_loss"] = v.final_data_loss;
        entry["final_physics_loss"] = v.final_physics_loss;
        entry["final_total_loss"] = v.final_total_loss;
      }
      variants.push_back(entry);
    }
    summary["variants"] = variants;
    const auto find_loss = [&report](const std::string& name) -> const VariantOutcome* {
      for (const auto& v : report.variants) {
        if (v.name == name && !v.diverged) return &v;
      }
      return nullptr;
    };
    const auto* vanilla = find_loss("vanilla");
    const auto* informed = find_loss("informed");
    const auto* constrained = find_loss("constrained");
    if (vanilla && informed && constrained) {
      summary["ordering"] = {
          {"constrained_le_informed",
           constrained->final_data_loss <= informed->final_data_loss},
          {"constrained_le_vanilla", constrained->final_data_loss <= vanilla->final_data_loss}};
    }
    nlohmann::json files;
    files["config"] = "config.ini";
    files["dataset"] = "dataset.csv";
    for (const auto& v : report.variants) {
      if (!v.trace_path.empty()) {
        files["trace_" + v.name] = "trace_" + v.name + ".csv";
        files["solution_" + v.name] = "solution_" + v.name + ".csv";
      }
    }
    if (!report.gp_path.empty()) files["gp"] = "gp.csv";
    if (!report.correspondence_path.empty()) files["correspondence"] = "correspondence.csv";
    summary["files"] = files;
    summary["warnings"] = report.warnings;
    report.summary_path = path_of("summary.json");
    write_text_file(report.summary_path, summary.dump(2) + "\n");
  }

  return report;
}

}  // namespace physnn
