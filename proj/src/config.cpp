// Copyright 2026 The bogsim Authors
// SPDX-License-Identifier: Apache-2.0

#include "bog/config.hpp"

#include <json.hpp>
#include <stdexcept>

namespace bog {

using nlohmann::json;

std::string to_string(AlgorithmSelection s) {
  switch (s) {
    case AlgorithmSelection::ByIdeal:
      return "by_ideal";
    case AlgorithmSelection::ByExperimental:
      return "by_experimental";
    case AlgorithmSelection::Both:
      return "both";
  }
  throw std::logic_error("unreachable");
}

AlgorithmSelection algorithm_selection_from_string(const std::string& text) {
  if (text == "by_ideal") return AlgorithmSelection::ByIdeal;
  if (text == "by_experimental") return AlgorithmSelection::ByExperimental;
  if (text == "both") return AlgorithmSelection::Both;
  throw std::invalid_argument(
      "algorithms must be one of by_ideal|by_experimental|both, got \"" + text +
      "\"");
}

NoiseModel NoiseConfig::channel_model() const {
  NoiseModel model;
  model.depolarizing_lambda = depolarizing_lambda;
  model.readout_epsilon = readout_epsilon;
  model.idle_lambda1 = idle_lambda1;
  return model;
}

InjectionSpec NoiseConfig::injection() const {
  InjectionSpec spec;
  spec.z_fraction = z_fraction;
  spec.zz_strength_hz = zz_strength_hz;
  spec.cnot_time_s = cnot_time_s;
  return spec;
}

bool NoiseConfig::any() const {
  return depolarizing_lambda > 0.0 || readout_epsilon > 0.0 ||
         idle_lambda1 > 0.0 || z_fraction != 0.0 || zz_strength_hz > 0.0;
}

bool ExperimentConfig::wants(Algorithm a) const {
  if (algorithms == AlgorithmSelection::Both) return true;
  return (a == Algorithm::ByIdeal) == (algorithms == AlgorithmSelection::ByIdeal);
}

int ExperimentConfig::max_depth() const {
  return depths.empty() ? 0 : depths.back();
}

std::vector<std::string> ExperimentConfig::validate() const {
  if (n_qubits < 2)
    throw std::invalid_argument("config: n_qubits must be >= 2 (linear chain)");
  if (n_qubits > kPureStateCap)
    throw std::invalid_argument("config: n_qubits exceeds the pure-state cap " +
                                std::to_string(kPureStateCap));
  if (noise.channel_model().has_stochastic_noise() && n_qubits > kMixedStateCap)
    throw std::invalid_argument(
        "config: stochastic noise requires density-matrix simulation, capped "
        "at n_qubits = " +
        std::to_string(kMixedStateCap));
  if (depths.empty()) throw std::invalid_argument("config: depths is empty");
  for (std::size_t i = 0; i < depths.size(); ++i) {
    if (depths[i] < 1)
      throw std::invalid_argument("config: depths must be >= 1 cycle");
    if (i > 0 && depths[i] <= depths[i - 1])
      throw std::invalid_argument("config: depths must be strictly ascending");
  }
  if (seeds < 1) throw std::invalid_argument("config: seeds must be >= 1");
  if (num_bins < 2) throw std::invalid_argument("config: num_bins must be >= 2");
  if (bootstrap_groups != 0) {
    if (bootstrap_groups < 2)
      throw std::invalid_argument(
          "config: bootstrap_groups must be 0 (disabled) or >= 2");
    if (bootstrap_groups > seeds)
      throw std::invalid_argument("config: bootstrap_groups exceeds seeds");
  }
  noise.channel_model().validate();
  if (noise.z_fraction < 0.0 || noise.z_fraction >= 1.0)
    throw std::invalid_argument("config: z_fraction outside [0, 1)");
  if (noise.zz_strength_hz < 0.0)
    throw std::invalid_argument("config: zz_strength_hz must be >= 0");
  if (noise.cnot_time_s < 0.0)
    throw std::invalid_argument("config: cnot_time_s must be >= 0");
  if (noise.zz_strength_hz > 0.0 && noise.cnot_time_s <= 0.0)
    throw std::invalid_argument(
        "config: zz_strength_hz > 0 requires a positive cnot_time_s");
  return statistics_warnings(seeds, n_qubits, num_bins, shots);
}

std::string config_to_json(const ExperimentConfig& config) {
  json j;
  j["version"] = "bog-config/1";
  j["n_qubits"] = config.n_qubits;
  j["depths"] = config.depths;
  j["seeds"] = config.seeds;
  j["master_seed"] = config.master_seed;
  j["shots"] = config.shots;
  j["num_bins"] = config.num_bins;
  j["noise"] = {{"depolarizing_lambda", config.noise.depolarizing_lambda},
                {"readout_epsilon", config.noise.readout_epsilon},
                {"idle_lambda1", config.noise.idle_lambda1},
                {"z_fraction", config.noise.z_fraction},
                {"zz_strength_hz", config.noise.zz_strength_hz},
                {"cnot_time_s", config.noise.cnot_time_s}};
  j["bootstrap_groups"] = config.bootstrap_groups;
  j["algorithms"] = to_string(config.algorithms);
  j["per_seed_fidelity"] = config.per_seed_fidelity;
  return j.dump(2) + "\n";
}

ExperimentConfig config_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("config: JSON parse error: ") +
                                e.what());
  }
  if (!j.is_object()) throw std::invalid_argument("config: not a JSON object");
  std::string version = j.value("version", std::string());
  if (version != "bog-config/1")
    throw std::invalid_argument("config: unsupported schema version \"" +
                                version + "\" (expected bog-config/1)");
  ExperimentConfig config;
  try {
    config.n_qubits = j.at("n_qubits").get<int>();
    config.depths = j.at("depths").get<std::vector<int>>();
    config.seeds = j.at("seeds").get<int>();
    config.master_seed = j.at("master_seed").get<std::uint64_t>();
    config.shots = j.at("shots").get<std::uint64_t>();
    config.num_bins = j.at("num_bins").get<int>();
    const json& noise = j.at("noise");
    config.noise.depolarizing_lambda =
        noise.at("depolarizing_lambda").get<double>();
    config.noise.readout_epsilon = noise.at("readout_epsilon").get<double>();
    config.noise.idle_lambda1 = noise.value("idle_lambda1", 0.0);
    config.noise.z_fraction = noise.at("z_fraction").get<double>();
    config.noise.zz_strength_hz = noise.at("zz_strength_hz").get<double>();
    config.noise.cnot_time_s = noise.at("cnot_time_s").get<double>();
    config.bootstrap_groups = j.at("bootstrap_groups").get<int>();
    config.algorithms =
        algorithm_selection_from_string(j.at("algorithms").get<std::string>());
    config.per_seed_fidelity = j.value("per_seed_fidelity", false);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("config: bad or missing field: ") +
                                e.what());
  }
  return config;
}

}  // namespace bog
