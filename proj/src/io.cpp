#include "hff/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "hff/errors.hpp"

namespace hff {

std::string format_double(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

void atomic_write(const std::filesystem::path& path, std::string_view content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw std::runtime_error("failed writing " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

namespace {

std::string couplings_json(const CouplingSpec& spec) {
  std::string out = "[";
  bool first = true;
  for (double j : spec.couplings()) {
    if (!first) out += ',';
    out += format_double(j);
    first = false;
  }
  return out + "]";
}

}  // namespace

std::string hamiltonian_jsonl(const CouplingSpec& spec) {
  return "{\"n\":" + std::to_string(spec.num_qubits()) + ",\"couplings\":" + couplings_json(spec) + "}";
}

json state_to_json(const StateDescriptor& state) {
  if (state.kind == StateDescriptor::Kind::domain_wall) return "domain_wall";
  return json{{"basis", state.bits}};
}

StateDescriptor state_from_json(const json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() == "domain_wall") return StateDescriptor::make_domain_wall();
    throw ConfigError("unknown state \"" + j.get<std::string>() + "\"");
  }
  if (j.is_object() && j.contains("basis")) return StateDescriptor::make_basis(j.at("basis").get<std::string>());
  throw ConfigError("state must be \"domain_wall\" or {\"basis\": \"0101...\"}");
}

std::string dataset_jsonl(const DatasetRecord& record) {
  return "{\"n\":" + std::to_string(record.spec.num_qubits()) + ",\"couplings\":" +
         couplings_json(record.spec) + ",\"state\":" + state_to_json(record.state).dump() +
         ",\"y\":" + format_double(record.y) + "}";
}

CouplingSpec parse_hamiltonian(const json& j) {
  return CouplingSpec(j.at("n").get<int>(), j.at("couplings").get<std::vector<double>>());
}

DatasetRecord parse_dataset_record(std::string_view line) {
  const json j = json::parse(line);
  return DatasetRecord{parse_hamiltonian(j), state_from_json(j.at("state")), j.at("y").get<double>()};
}

void write_dataset(const std::filesystem::path& path, const std::vector<DatasetRecord>& records) {
  std::string content;
  for (const auto& r : records) content += dataset_jsonl(r) + '\n';
  atomic_write(path, content);
}

std::vector<DatasetRecord> read_dataset(const std::filesystem::path& path) {
  std::istringstream in(read_file(path));
  std::vector<DatasetRecord> records;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    records.push_back(parse_dataset_record(line));
  }
  return records;
}

std::string features_csv(const std::vector<FeatureVector>& rows) {
  std::string out;
  if (rows.empty()) return out;
  const std::size_t width = rows.front().size();
  for (std::size_t k = 0; k < width; ++k) {
    if (k) out += ',';
    out += "x" + std::to_string(k);
  }
  out += '\n';
  for (const auto& row : rows) {
    if (row.size() != width) throw InvalidDimension("feature rows differ in length");
    for (std::size_t k = 0; k < width; ++k) {
      if (k) out += ',';
      out += format_double(row[k]);
    }
    out += '\n';
  }
  return out;
}

std::vector<FeatureVector> parse_features_csv(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::vector<FeatureVector> rows;
  if (!std::getline(in, line)) return rows;
  const std::size_t width = static_cast<std::size_t>(std::count(line.begin(), line.end(), ',')) + 1;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> values;
    values.reserve(width);
    const char* p = line.c_str();
    while (*p) {
      char* end = nullptr;
      values.push_back(std::strtod(p, &end));
      if (end == p) throw InvalidDimension("malformed feature value in \"" + line + "\"");
      p = end;
      if (*p == ',') ++p;
    }
    if (values.size() != width) throw InvalidDimension("feature row has the wrong number of columns");
    rows.emplace_back(std::move(values));
  }
  return rows;
}

void write_features(const std::filesystem::path& path, const std::vector<FeatureVector>& rows) {
  atomic_write(path, features_csv(rows));
}

std::vector<FeatureVector> read_features(const std::filesystem::path& path) {
  return parse_features_csv(read_file(path));
}

json to_json(const FeatureMapConfig& cfg) {
  json j;
  j["k"] = cfg.K;
  j["c"] = cfg.C;
  j["backend"] = std::string(to_string(cfg.backend));
  j["shots"] = cfg.shots ? json(*cfg.shots) : json(nullptr);
  j["nstep-schedule"] = cfg.schedule ? json(cfg.schedule->to_string()) : json(nullptr);
  j["seed"] = cfg.seed;
  return j;
}

FeatureMapConfig feature_config_from_json(const json& j) {
  FeatureMapConfig cfg;
  cfg.K = j.value("k", cfg.K);
  cfg.C = j.value("c", cfg.C);
  if (j.contains("backend")) cfg.backend = parse_backend(j.at("backend").get<std::string>());
  if (j.contains("shots") && !j.at("shots").is_null()) cfg.shots = j.at("shots").get<std::int64_t>();
  if (j.contains("nstep-schedule") && !j.at("nstep-schedule").is_null()) {
    cfg.schedule = TrotterSchedule::parse(j.at("nstep-schedule").get<std::string>());
  }
  cfg.seed = j.value("seed", cfg.seed);
  return cfg;
}

json to_json(const FunctionSpec& f) {
  json j;
  j["f"] = std::string(to_string(f.kind()));
  j["c"] = f.domain_bound();
  j["sup_norm"] = f.sup_norm();
  switch (f.kind()) {
    case FunctionKind::exp_neg_beta: j["beta"] = f.parameter(); break;
    case FunctionKind::cosine:
    case FunctionKind::sine: j["time"] = f.parameter(); break;
    case FunctionKind::step: j["threshold"] = f.parameter(); break;
    case FunctionKind::fourier_series: j["coeffs"] = f.coefficients(); break;
  }
  return j;
}

FunctionSpec function_from_json(const json& j) {
  const double C = j.value("c", 3.0);
  switch (parse_function_kind(j.value("f", std::string("exp")))) {
    case FunctionKind::exp_neg_beta: return FunctionSpec::exp_neg_beta(j.value("beta", 1.0), C);
    case FunctionKind::cosine: return FunctionSpec::cosine(j.value("time", 1.0), C);
    case FunctionKind::sine: return FunctionSpec::sine(j.value("time", 1.0), C);
    case FunctionKind::step: return FunctionSpec::step(j.value("threshold", 0.0), C);
    case FunctionKind::fourier_series:
      return FunctionSpec::fourier_series(j.at("coeffs").get<std::vector<double>>(), C);
  }
  throw ConfigError("unknown target function");
}

json to_json(const RegressionModel& model) {
  json j;
  j["weights"] = std::vector<double>(model.weights.data(), model.weights.data() + model.weights.size());
  j["norm_budget"] = model.norm_budget ? json(*model.norm_budget) : json(nullptr);
  j["method"] = std::string(to_string(model.method));
  return j;
}

RegressionModel model_from_json(const json& j) {
  RegressionModel model;
  const auto w = j.at("weights").get<std::vector<double>>();
  model.weights = Eigen::Map<const Eigen::VectorXd>(w.data(), static_cast<Eigen::Index>(w.size()));
  if (!j.at("norm_budget").is_null()) model.norm_budget = j.at("norm_budget").get<double>();
  model.method = parse_fit_method(j.at("method").get<std::string>());
  return model;
}

json to_json(const Metrics& metrics) {
  json j;
  j["r2"] = metrics.r2 ? json(*metrics.r2) : json(nullptr);
  j["mse"] = metrics.mse;
  j["n_train"] = metrics.n_train;
  j["n_test"] = metrics.n_test;
  return j;
}

}  // namespace hff
