// Command-line front end: generate | features | train | bound | scatter | reproduce.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "hff/errors.hpp"
#include "hff/io.hpp"
#include "hff/pipeline.hpp"

namespace {

using namespace hff;

// Raw flag values; unset flags leave the configuration untouched.
struct Flags {
  std::string config;
  std::optional<int> n;
  std::optional<std::int64_t> num;
  std::optional<std::uint64_t> seed;
  std::optional<int> k;
  std::optional<double> c;
  std::optional<std::string> backend;
  std::optional<std::int64_t> shots;
  std::optional<std::string> schedule;
  std::optional<std::string> method;
  std::optional<double> w_bound;
  std::optional<double> alpha;
  std::optional<double> split;
  std::optional<std::string> f;
  std::optional<double> beta;
  std::optional<double> time;
  std::optional<std::string> coeffs;
  std::optional<double> threshold;
  std::optional<std::string> state;
  std::optional<unsigned> threads;
  std::optional<std::string> in;
  std::optional<std::string> out;
  std::optional<std::string> features;
  std::optional<std::string> metrics;
};

void add_experiment_flags(CLI::App* app, Flags& f) {
  app->add_option("--config", f.config, "JSON configuration file; flags override its values");
  app->add_option("--n", f.n, "Number of qubits");
  app->add_option("--num", f.num, "Number of samples N_d");
  app->add_option("--seed", f.seed, "Master seed (also read from $HFF_SEED)");
  app->add_option("--threads", f.threads, "Worker threads (0 = all cores)");
}

void add_feature_flags(CLI::App* app, Flags& f) {
  app->add_option("--k", f.k, "Truncation order K");
  app->add_option("--c", f.c, "Spectral bound C");
  app->add_option("--backend", f.backend, "exact | hadamard-shots | overlap-shots");
  app->add_option("--shots", f.shots, "Shots per circuit (0 = infinite-shot limit)");
  app->add_option("--nstep-schedule", f.schedule, "Trotter steps per l, e.g. 1,1,2");
}

void add_target_flags(CLI::App* app, Flags& f) {
  app->add_option("--f", f.f, "Target function: exp | cos | sin | fourier | step");
  app->add_option("--beta", f.beta, "Inverse temperature for --f exp");
  app->add_option("--time", f.time, "Time t for --f cos / sin");
  app->add_option("--coeffs", f.coeffs, "Comma-separated coefficients for --f fourier");
  app->add_option("--threshold", f.threshold, "Threshold for --f step");
  app->add_option("--state", f.state, "domain_wall or a bitstring such as 001110");
}

void add_train_flags(CLI::App* app, Flags& f) {
  app->add_option("--method", f.method, "ols | ridge | constrained");
  app->add_option("--w-bound", f.w_bound, "Weight-norm budget W for constrained fits");
  app->add_option("--alpha", f.alpha, "Ridge parameter");
  app->add_option("--split", f.split, "Training fraction");
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = text.find(',', pos);
    const std::string token = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    std::size_t used = 0;
    out.push_back(std::stod(token, &used));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

ExperimentConfig build_config(const Flags& f) {
  json j = json::object();
  if (!f.config.empty()) j = json::parse(read_file(f.config));
  if (const char* env = std::getenv(kSeedEnvironmentVariable); env && *env) {
    j["seed"] = std::stoull(env);
  }
  if (f.n) j["n"] = *f.n;
  if (f.num) j["num"] = *f.num;
  if (f.seed) j["seed"] = *f.seed;
  if (f.threads) j["threads"] = *f.threads;
  if (f.k) j["k"] = *f.k;
  if (f.c) j["c"] = *f.c;
  if (f.backend) j["backend"] = *f.backend;
  if (f.shots) j["shots"] = *f.shots > 0 ? json(*f.shots) : json(nullptr);
  if (f.schedule) j["nstep-schedule"] = f.schedule->empty() ? json(nullptr) : json(*f.schedule);
  if (f.method) j["method"] = *f.method;
  if (f.w_bound) j["w-bound"] = *f.w_bound;
  if (f.alpha) j["alpha"] = *f.alpha;
  if (f.split) j["split"] = *f.split;
  if (f.f) j["f"] = *f.f;
  if (f.beta) j["beta"] = *f.beta;
  if (f.time) j["time"] = *f.time;
  if (f.coeffs) j["coeffs"] = parse_list(*f.coeffs);
  if (f.threshold) j["threshold"] = *f.threshold;
  if (f.state) j["state"] = *f.state == "domain_wall" ? json("domain_wall") : json{{"basis", *f.state}};
  if (f.features) j["features"] = *f.features;
  if (f.metrics) j["metrics"] = *f.metrics;
  return experiment_config_from_json(j);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hamiltonian Fourier feature regression"};
  app.require_subcommand(1);
  Flags flags;

  auto* generate = app.add_subcommand("generate", "Sample Hamiltonians and write labelled JSONL");
  add_experiment_flags(generate, flags);
  add_target_flags(generate, flags);
  add_feature_flags(generate, flags);
  generate->add_option("--out", flags.out, "Dataset path (JSONL)");

  auto* features = app.add_subcommand("features", "Compute Fourier features for a dataset");
  add_experiment_flags(features, flags);
  add_feature_flags(features, flags);
  features->add_option("--in", flags.in, "Dataset path (JSONL)");
  features->add_option("--out", flags.out, "Feature CSV path");

  auto* train = app.add_subcommand("train", "Fit on the training split and report test metrics");
  add_experiment_flags(train, flags);
  add_train_flags(train, flags);
  train->add_option("--in", flags.in, "Dataset path (JSONL)");
  train->add_option("--features", flags.features, "Feature CSV path");
  train->add_option("--out", flags.out, "Model JSON path");
  train->add_option("--metrics", flags.metrics, "Metrics JSON path");

  BoundInputs bound_inputs;
  auto* bound = app.add_subcommand("bound", "Evaluate the expected-loss bounds and shot count");
  bound->add_option("--k", bound_inputs.K, "Truncation order K")->required();
  bound->add_option("--w-bound", bound_inputs.W, "Weight-norm budget W")->required();
  bound->add_option("--f-inf", bound_inputs.f_inf, "Sup-norm of f")->required();
  bound->add_option("--num", bound_inputs.N_d, "Number of samples N_d")->required();
  bound->add_option("--delta", bound_inputs.delta, "Failure probability");
  bound->add_option("--eps-k", bound_inputs.eps_K, "Fourier truncation error");
  bound->add_option("--eta", bound_inputs.eta, "Per-feature noise level");

  std::optional<std::string> exact_csv;
  std::optional<std::string> noisy_csv;
  auto* scatter = app.add_subcommand("scatter", "Write (exact, estimated) pairs for plotting");
  add_experiment_flags(scatter, flags);
  add_feature_flags(scatter, flags);
  scatter->add_option("--in", flags.in, "Dataset path (JSONL) for overlap scatter");
  scatter->add_option("--exact", exact_csv, "Exact feature CSV (feature scatter)");
  scatter->add_option("--noisy", noisy_csv, "Estimated feature CSV (feature scatter)");
  scatter->add_option("--out", flags.out, "Scatter CSV path")->required();

  std::string row_id;
  std::optional<std::uint64_t> reproduce_seed;
  std::optional<unsigned> reproduce_threads;
  auto* reproduce_cmd = app.add_subcommand("reproduce", "Run a reference protocol and check it");
  reproduce_cmd->add_option("row", row_id, "exact12 | trotter12 | shots12")->required();
  reproduce_cmd->add_option("--seed", reproduce_seed, "Master seed (also read from $HFF_SEED)");
  reproduce_cmd->add_option("--threads", reproduce_threads, "Worker threads (0 = all cores)");
  reproduce_cmd->add_option("--out", flags.out, "Write the report JSON here as well");

  CLI11_PARSE(app, argc, argv);

  try {
    if (generate->parsed()) {
      ExperimentConfig cfg = build_config(flags);
      if (flags.out) cfg.dataset_path = *flags.out;
      if (cfg.num_samples == 0) std::cerr << "warning: --num 0 writes an empty dataset\n";
      cmd_generate(cfg);
      std::cout << "wrote " << cfg.num_samples << " records to " << cfg.dataset_path.string() << "\n";
    } else if (features->parsed()) {
      ExperimentConfig cfg = build_config(flags);
      if (flags.in) cfg.dataset_path = *flags.in;
      if (flags.out) cfg.features_path = *flags.out;
      cmd_features(cfg);
      std::cout << "wrote features to " << cfg.features_path.string() << "\n";
    } else if (train->parsed()) {
      ExperimentConfig cfg = build_config(flags);
      if (flags.in) cfg.dataset_path = *flags.in;
      if (flags.out) cfg.model_path = *flags.out;
      cfg.validate();
      const Metrics m = cmd_train_eval(cfg);
      std::cout << to_json(m).dump(2) << "\n";
    } else if (bound->parsed()) {
      std::cout << cmd_bound(bound_inputs).dump(2) << "\n";
    } else if (scatter->parsed()) {
      std::vector<ScatterPoint> points;
      if (exact_csv || noisy_csv) {
        if (!exact_csv || !noisy_csv) throw ConfigError("feature scatter needs both --exact and --noisy");
        points = feature_scatter(read_features(*exact_csv), read_features(*noisy_csv));
      } else {
        ExperimentConfig cfg = build_config(flags);
        if (flags.in) cfg.dataset_path = *flags.in;
        points = overlap_scatter(read_dataset(cfg.dataset_path), cfg.features, cfg.threads);
      }
      atomic_write(*flags.out, scatter_csv(points));
      std::cout << "wrote " << points.size() << " points, rms deviation " << scatter_rms(points) << "\n";
    } else if (reproduce_cmd->parsed()) {
      std::uint64_t seed = 0;
      if (const char* env = std::getenv(kSeedEnvironmentVariable); env && *env) seed = std::stoull(env);
      if (reproduce_seed) seed = *reproduce_seed;
      ReproductionRow row = reproduction_row(row_id, seed);
      if (reproduce_threads) row.config.threads = *reproduce_threads;
      const ReproductionReport report = reproduce(row);
      const std::string text = to_json(report).dump(2) + "\n";
      if (flags.out) atomic_write(*flags.out, text);
      std::cout << text;
      return report.passed ? 0 : 2;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
