#include "hff/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "hff/errors.hpp"

namespace hff {

void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& body) {
  if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::jthread> workers;
  for (unsigned w = 0; w < threads; ++w) {
    workers.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          next = count;
        }
      }
    });
  }
  workers.clear();
  if (failure) std::rethrow_exception(failure);
}

void ExperimentConfig::validate() const {
  if (n == 32 || n == 40 || n > kMaxPipelineQubits) {
    throw ConfigError("n = " + std::to_string(n) + " is beyond the exact spectral oracle (n <= " +
                      std::to_string(kMaxPipelineQubits) +
                      "); large-chain results need tensor-network simulation, which this tool does not do");
  }
  if (n < 2) throw ConfigError("n must be >= 2");
  if (num_samples < 0) throw ConfigError("number of samples must be >= 0");
  if (!(split > 0.0 && split < 1.0)) throw ConfigError("split must lie in (0, 1)");
  if (method == FitMethod::constrained && !w_bound) throw ConfigError("constrained fits need --w-bound");
  if (w_bound && !(*w_bound > 0.0)) throw ConfigError("--w-bound must be > 0");
  if (!(alpha >= 0.0)) throw ConfigError("--alpha must be >= 0");
  features.validate();
}

json to_json(const ExperimentConfig& cfg) {
  json j = to_json(cfg.features);
  const json f = to_json(cfg.target);
  for (const auto& [key, value] : f.items()) {
    if (key != "c" && key != "sup_norm") j[key] = value;
  }
  j["n"] = cfg.n;
  j["num"] = cfg.num_samples;
  j["split"] = cfg.split;
  j["state"] = state_to_json(cfg.state);
  j["method"] = std::string(to_string(cfg.method));
  j["w-bound"] = cfg.w_bound ? json(*cfg.w_bound) : json(nullptr);
  j["alpha"] = cfg.alpha;
  j["seed"] = cfg.seed;
  j["threads"] = cfg.threads;
  j["dataset"] = cfg.dataset_path.string();
  j["features"] = cfg.features_path.string();
  j["model"] = cfg.model_path.string();
  j["metrics"] = cfg.metrics_path.string();
  return j;
}

ExperimentConfig experiment_config_from_json(const json& j) {
  ExperimentConfig cfg;
  cfg.features = feature_config_from_json(j);
  json f = j;
  f["c"] = cfg.features.C;
  cfg.target = function_from_json(f);
  cfg.n = j.value("n", cfg.n);
  cfg.num_samples = j.value("num", cfg.num_samples);
  cfg.split = j.value("split", cfg.split);
  if (j.contains("state")) cfg.state = state_from_json(j.at("state"));
  if (j.contains("method")) cfg.method = parse_fit_method(j.at("method").get<std::string>());
  if (j.contains("w-bound") && !j.at("w-bound").is_null()) cfg.w_bound = j.at("w-bound").get<double>();
  cfg.alpha = j.value("alpha", cfg.alpha);
  cfg.seed = j.value("seed", cfg.seed);
  cfg.features.seed = cfg.seed;
  cfg.threads = j.value("threads", cfg.threads);
  cfg.dataset_path = j.value("dataset", cfg.dataset_path.string());
  cfg.features_path = j.value("features", cfg.features_path.string());
  cfg.model_path = j.value("model", cfg.model_path.string());
  cfg.metrics_path = j.value("metrics", cfg.metrics_path.string());
  return cfg;
}

std::vector<DatasetRecord> generate_dataset(const ExperimentConfig& cfg, CacheSet* caches) {
  cfg.validate();
  const auto count = static_cast<std::size_t>(cfg.num_samples);
  const StateVector psi = materialize(cfg.state, cfg.n);
  std::vector<std::optional<DatasetRecord>> slots(count);
  CacheSet built(count);
  parallel_for(count, cfg.threads, [&](std::size_t i) {
    Rng rng = make_substream(cfg.seed, StreamRole::couplings, i);
    CouplingSpec spec = sample_couplings(cfg.n, rng);
    auto cache = std::make_shared<const SpectralCache>(spec);
    const double y = label(*cache, psi, cfg.target);
    slots[i] = DatasetRecord{std::move(spec), cfg.state, y};
    built[i] = std::move(cache);
  });
  if (caches) *caches = std::move(built);
  std::vector<DatasetRecord> records;
  records.reserve(count);
  for (auto& slot : slots) records.push_back(std::move(*slot));
  return records;
}

std::vector<FeatureVector> compute_features(const std::vector<DatasetRecord>& records,
                                            const FeatureMapConfig& cfg, unsigned threads,
                                            const CacheSet* caches) {
  cfg.validate();
  if (caches && caches->size() != records.size()) throw InvalidDimension("one cache per record is required");
  std::vector<FeatureVector> rows(records.size());
  parallel_for(records.size(), threads, [&](std::size_t i) {
    const DatasetRecord& r = records[i];
    std::shared_ptr<const SpectralCache> owned;
    if (caches) {
      owned = (*caches)[i];
      if (!(owned->spec() == r.spec)) throw PreconditionError("cache does not match record " + std::to_string(i));
    } else {
      owned = std::make_shared<const SpectralCache>(r.spec);
    }
    const SpectralCache& cache = *owned;
    const StateVector psi = materialize(r.state, r.spec.num_qubits());
    if (cfg.backend == FeatureBackend::exact) {
      rows[i] = exact_features(cache, psi, cfg);
    } else {
      rows[i] = noisy_features(cache, psi, reference_eigenstate(r.spec, 0), cfg, i);
    }
  });
  return rows;
}

TrainResult train_eval(const std::vector<FeatureVector>& features, const std::vector<DatasetRecord>& records,
                       const ExperimentConfig& cfg) {
  if (features.size() != records.size()) {
    throw InvalidDimension("features have " + std::to_string(features.size()) + " rows but the dataset has " +
                           std::to_string(records.size()));
  }
  std::vector<double> targets;
  targets.reserve(records.size());
  for (const auto& r : records) targets.push_back(r.y);
  const DesignMatrix all(features, targets);
  TrainResult result;
  result.split = train_test_split(records.size(), cfg.split, cfg.seed);
  if (result.split.train.empty() || result.split.test.empty()) {
    throw ConfigError("the split leaves an empty training or test set");
  }
  const DesignMatrix train = all.subset(result.split.train);
  const DesignMatrix test = all.subset(result.split.test);
  switch (cfg.method) {
    case FitMethod::ols: result.model = fit_ols(train); break;
    case FitMethod::ridge: result.model = fit_ridge(train, cfg.alpha); break;
    case FitMethod::constrained: result.model = fit_constrained(train, cfg.w_bound.value()); break;
  }
  result.metrics = evaluate(result.model, test, train.num_samples());
  return result;
}

namespace {

constexpr const char* kOverlapNames[] = {"w+", "w-", "w+i", "w-i"};
constexpr Phase kOverlapPhases[] = {Phase::plus, Phase::minus, Phase::plus_i, Phase::minus_i};

}  // namespace

std::vector<ScatterPoint> overlap_scatter(const std::vector<DatasetRecord>& records,
                                          const FeatureMapConfig& cfg, unsigned threads) {
  cfg.validate();
  std::vector<std::vector<ScatterPoint>> per_sample(records.size());
  parallel_for(records.size(), threads, [&](std::size_t i) {
    const DatasetRecord& r = records[i];
    const SpectralCache cache(r.spec);
    const StateVector psi = materialize(r.state, r.spec.num_qubits());
    const ReferenceEigenstate ref = reference_eigenstate(r.spec, 0);
    const StateSpectrum spectrum = cache.spectrum(psi.amplitudes());
    const auto propagated = feature_overlaps(cache, psi, ref, cfg);
    for (int l = 0; l <= cfg.K; ++l) {
      const double t = cfg.time(l);
      const OverlapProbabilities exact = overlaps_from_amplitude(spectrum.amplitude(t), ref.eigenvalue, t);
      OverlapProbabilities estimate = propagated[static_cast<std::size_t>(l)];
      if (cfg.shots) estimate = sample_overlaps(estimate, *cfg.shots, cfg.seed, i, l);
      for (int q = 0; q < 4; ++q) {
        per_sample[i].push_back(
            {i, l, kOverlapNames[q], exact.get(kOverlapPhases[q]), estimate.get(kOverlapPhases[q])});
      }
    }
  });
  std::vector<ScatterPoint> points;
  for (auto& block : per_sample) points.insert(points.end(), block.begin(), block.end());
  return points;
}

std::vector<ScatterPoint> feature_scatter(const std::vector<FeatureVector>& exact,
                                          const std::vector<FeatureVector>& noisy) {
  if (exact.size() != noisy.size()) throw InvalidDimension("scatter inputs differ in row count");
  std::vector<ScatterPoint> points;
  for (std::size_t i = 0; i < exact.size(); ++i) {
    if (exact[i].size() != noisy[i].size()) throw InvalidDimension("scatter rows differ in length");
    for (std::size_t k = 0; k < exact[i].size(); ++k) {
      points.push_back({i, static_cast<int>(k), "x", exact[i][k], noisy[i][k]});
    }
  }
  return points;
}

std::string scatter_csv(const std::vector<ScatterPoint>& points) {
  std::string out = "sample,index,quantity,exact,estimate\n";
  for (const auto& p : points) {
    out += std::to_string(p.sample) + ',' + std::to_string(p.index) + ',' + p.quantity + ',' +
           format_double(p.exact) + ',' + format_double(p.estimate) + '\n';
  }
  return out;
}

double scatter_rms(const std::vector<ScatterPoint>& points) {
  if (points.empty()) return 0.0;
  double s = 0.0;
  for (const auto& p : points) s += (p.estimate - p.exact) * (p.estimate - p.exact);
  return std::sqrt(s / static_cast<double>(points.size()));
}

namespace {

std::filesystem::path sidecar(const std::filesystem::path& path, const char* suffix) {
  std::filesystem::path out = path;
  out += suffix;
  return out;
}

}  // namespace

void cmd_generate(const ExperimentConfig& cfg) {
  const auto records = generate_dataset(cfg);
  write_dataset(cfg.dataset_path, records);
  atomic_write(sidecar(cfg.dataset_path, ".config.json"), to_json(cfg).dump(2) + "\n");
}

void cmd_features(const ExperimentConfig& cfg) {
  const auto records = read_dataset(cfg.dataset_path);
  const auto rows = compute_features(records, cfg.features, cfg.threads);
  if (rows.empty()) {
    atomic_write(cfg.features_path, "");
  } else {
    write_features(cfg.features_path, rows);
  }
  atomic_write(sidecar(cfg.features_path, ".json"), to_json(cfg.features).dump(2) + "\n");
}

Metrics cmd_train_eval(const ExperimentConfig& cfg) {
  const auto records = read_dataset(cfg.dataset_path);
  const auto rows = read_features(cfg.features_path);
  const TrainResult result = train_eval(rows, records, cfg);
  atomic_write(cfg.model_path, to_json(result.model).dump(2) + "\n");
  atomic_write(cfg.metrics_path, to_json(result.metrics).dump(2) + "\n");
  return result.metrics;
}

json cmd_bound(const BoundInputs& inputs) {
  const LossBound noiseless = expected_loss_bound(inputs);
  const LossBound noisy = noisy_expected_loss_bound(inputs);
  json j;
  j["inputs"] = {{"k", inputs.K},       {"w-bound", inputs.W}, {"f-inf", inputs.f_inf},
                 {"num", inputs.N_d},   {"delta", inputs.delta}, {"eps-k", inputs.eps_K},
                 {"eta", inputs.eta}};
  j["expected_loss"] = {{"truncation", noiseless.truncation},
                        {"complexity", noiseless.complexity},
                        {"confidence", noiseless.confidence},
                        {"total", noiseless.total()}};
  j["noisy_expected_loss"] = {{"truncation", noisy.truncation},     {"complexity", noisy.complexity},
                              {"confidence", noisy.confidence},     {"noise_linear", noisy.noise_linear},
                              {"noise_quadratic", noisy.noise_quadratic}, {"total", noisy.total()}};
  if (inputs.eta > 0.0) j["hoeffding_shots"] = hoeffding_shots(inputs.eta, inputs.delta, inputs.K);
  return j;
}

ReproductionRow reproduction_row(const std::string& id, std::uint64_t seed) {
  ReproductionRow row;
  row.id = id;
  ExperimentConfig& cfg = row.config;
  cfg.n = 12;
  cfg.num_samples = 55;
  cfg.split = 0.8;
  cfg.target = FunctionSpec::exp_neg_beta(1.0, 3.0);
  cfg.features.K = 11;
  cfg.features.C = 3.0;
  cfg.state = StateDescriptor::make_domain_wall();
  cfg.seed = seed;
  cfg.features.seed = seed;
  if (id == "exact12") {
    row.description = "12 qubits, exact evolution, exact features, least squares";
    cfg.features.backend = FeatureBackend::exact;
    cfg.method = FitMethod::ols;
    row.reference_r2 = 1.00;
    row.reference_mse = 1.47e-10;
    row.max_mse = 1e-6;
    row.min_r2 = 0.999;
  } else if (id == "trotter12") {
    row.description = "12 qubits, second-order Trotter (1,1,1,1,1,2,2,2,2,3,3,3), noiseless overlaps";
    cfg.features.backend = FeatureBackend::overlap_shots;
    cfg.features.schedule = TrotterSchedule::parse("1,1,1,1,1,2,2,2,2,3,3,3");
    cfg.method = FitMethod::ols;
    row.reference_r2 = 0.998;
    row.reference_mse = 1.66e-4;
    row.max_mse = 1e-3;
    row.min_r2 = 0.99;
  } else if (id == "shots12") {
    row.description = "12 qubits, exact evolution, overlap estimator with 10^4 shots per circuit";
    cfg.features.backend = FeatureBackend::overlap_shots;
    cfg.features.shots = 10000;
    cfg.method = FitMethod::ols;
    row.reference_r2 = 0.977;
    row.reference_mse = 2.10e-3;
    row.min_r2 = 0.95;
  } else if (id == "exact32" || id == "trotter32" || id == "shots32" || id == "exact40" ||
             id == "trotter40" || id == "shots40") {
    throw ConfigError("row " + id +
                      " needs 32 or 40 qubits; the exact spectral oracle stops at 16 qubits and "
                      "tensor-network simulation is not provided");
  } else {
    throw ConfigError("unknown reproduction row \"" + id + "\" (expected exact12, trotter12 or shots12)");
  }
  return row;
}

ReproductionReport reproduce(const ReproductionRow& row) {
  CacheSet caches;
  const auto records = generate_dataset(row.config, &caches);
  const auto rows = compute_features(records, row.config.features, row.config.threads, &caches);
  const TrainResult result = train_eval(rows, records, row.config);
  ReproductionReport report{row, result.metrics, true};
  if (row.max_mse && !(result.metrics.mse <= *row.max_mse)) report.passed = false;
  if (row.min_r2 && !(result.metrics.r2 && *result.metrics.r2 >= *row.min_r2)) report.passed = false;
  return report;
}

json to_json(const ReproductionReport& report) {
  json j;
  j["row"] = report.row.id;
  j["description"] = report.row.description;
  j["seed"] = report.row.config.seed;
  j["metrics"] = to_json(report.metrics);
  j["reference"] = {{"r2", report.row.reference_r2}, {"mse", report.row.reference_mse}};
  json thresholds;
  thresholds["max_mse"] = report.row.max_mse ? json(*report.row.max_mse) : json(nullptr);
  thresholds["min_r2"] = report.row.min_r2 ? json(*report.row.min_r2) : json(nullptr);
  j["thresholds"] = thresholds;
  j["pass"] = report.passed;
  return j;
}

}  // namespace hff
