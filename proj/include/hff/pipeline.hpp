#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hff/bounds.hpp"
#include "hff/features.hpp"
#include "hff/io.hpp"
#include "hff/labels.hpp"
#include "hff/regression.hpp"
#include "hff/states.hpp"

namespace hff {

// Runs body(i) for i in [0, count) on up to `threads` workers (0 = hardware).
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& body);

inline constexpr int kMaxPipelineQubits = 16;

/// Everything a pipeline run needs. JSON keys mirror the CLI flag names.
struct ExperimentConfig {
  int n = 12;
  std::int64_t num_samples = 55;
  double split = 0.8;
  FunctionSpec target = FunctionSpec::exp_neg_beta(1.0, 3.0);
  FeatureMapConfig features;
  StateDescriptor state;
  FitMethod method = FitMethod::ols;
  std::optional<double> w_bound;
  double alpha = 0.0;
  std::uint64_t seed = 0;
  unsigned threads = 0;

  std::filesystem::path dataset_path = "dataset.jsonl";
  std::filesystem::path features_path = "features.csv";
  std::filesystem::path model_path = "model.json";
  std::filesystem::path metrics_path = "metrics.json";

  void validate() const;
};

json to_json(const ExperimentConfig& cfg);
ExperimentConfig experiment_config_from_json(const json& j);

// Environment variable that overrides the master seed of a loaded configuration.
inline constexpr const char* kSeedEnvironmentVariable = "HFF_SEED";

// Per-sample spectral caches, shared between labelling and feature extraction.
using CacheSet = std::vector<std::shared_ptr<const SpectralCache>>;

/// Samples N_d Hamiltonians from independent substreams and labels them exactly.
/// When `caches` is given it receives the warmed cache of every sample.
std::vector<DatasetRecord> generate_dataset(const ExperimentConfig& cfg, CacheSet* caches = nullptr);

std::vector<FeatureVector> compute_features(const std::vector<DatasetRecord>& records,
                                            const FeatureMapConfig& cfg, unsigned threads = 0,
                                            const CacheSet* caches = nullptr);

struct TrainResult {
  RegressionModel model;
  Metrics metrics;
  Split split;
};

TrainResult train_eval(const std::vector<FeatureVector>& features, const std::vector<DatasetRecord>& records,
                       const ExperimentConfig& cfg);

/// One (exact, estimated) pair for external plotting.
struct ScatterPoint {
  std::size_t sample = 0;
  int index = 0;        // l for overlaps, k for features
  std::string quantity; // "w+", "w-", "w+i", "w-i" or "x"
  double exact = 0.0;
  double estimate = 0.0;
};

// Exact overlaps against the configured (optionally Trotterized, sampled) estimates.
std::vector<ScatterPoint> overlap_scatter(const std::vector<DatasetRecord>& records,
                                          const FeatureMapConfig& cfg, unsigned threads = 0);
std::vector<ScatterPoint> feature_scatter(const std::vector<FeatureVector>& exact,
                                          const std::vector<FeatureVector>& noisy);
std::string scatter_csv(const std::vector<ScatterPoint>& points);
double scatter_rms(const std::vector<ScatterPoint>& points);

// File-level stages. Each writes its outputs atomically.
void cmd_generate(const ExperimentConfig& cfg);
void cmd_features(const ExperimentConfig& cfg);
Metrics cmd_train_eval(const ExperimentConfig& cfg);
json cmd_bound(const BoundInputs& inputs);

/// A reference result the pipeline can be rerun against.
struct ReproductionRow {
  std::string id;
  std::string description;
  ExperimentConfig config;
  double reference_r2 = 0.0;
  double reference_mse = 0.0;
  std::optional<double> max_mse;
  std::optional<double> min_r2;
};

// Known ids: exact12, trotter12, shots12. Larger rows are rejected with an explanation.
ReproductionRow reproduction_row(const std::string& id, std::uint64_t seed = 0);

struct ReproductionReport {
  ReproductionRow row;
  Metrics metrics;
  bool passed = false;
};

ReproductionReport reproduce(const ReproductionRow& row);
json to_json(const ReproductionReport& report);

}  // namespace hff
