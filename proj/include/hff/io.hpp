#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "hff/features.hpp"
#include "hff/hamiltonians.hpp"
#include "hff/labels.hpp"
#include "hff/regression.hpp"
#include "hff/states.hpp"

namespace hff {

using nlohmann::json;

// %.17g: enough digits for an exact double round trip.
std::string format_double(double value);

// Writes to a temporary sibling and renames it into place.
void atomic_write(const std::filesystem::path& path, std::string_view content);
std::string read_file(const std::filesystem::path& path);

/// One line of a dataset file.
struct DatasetRecord {
  CouplingSpec spec;
  StateDescriptor state;
  double y = 0.0;
};

// {"n": 4, "couplings": [...]}
std::string hamiltonian_jsonl(const CouplingSpec& spec);
// {"n": 4, "couplings": [...], "state": ..., "y": ...}
std::string dataset_jsonl(const DatasetRecord& record);
CouplingSpec parse_hamiltonian(const json& j);
DatasetRecord parse_dataset_record(std::string_view line);

void write_dataset(const std::filesystem::path& path, const std::vector<DatasetRecord>& records);
std::vector<DatasetRecord> read_dataset(const std::filesystem::path& path);

json state_to_json(const StateDescriptor& state);
StateDescriptor state_from_json(const json& j);

// Header x0,...,x{2K}; one row per sample.
std::string features_csv(const std::vector<FeatureVector>& rows);
std::vector<FeatureVector> parse_features_csv(std::string_view text);
void write_features(const std::filesystem::path& path, const std::vector<FeatureVector>& rows);
std::vector<FeatureVector> read_features(const std::filesystem::path& path);

json to_json(const FeatureMapConfig& cfg);
FeatureMapConfig feature_config_from_json(const json& j);

json to_json(const FunctionSpec& f);
FunctionSpec function_from_json(const json& j);

json to_json(const RegressionModel& model);
RegressionModel model_from_json(const json& j);

json to_json(const Metrics& metrics);

}  // namespace hff
