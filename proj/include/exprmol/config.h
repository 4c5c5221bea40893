//
// SPDX-License-Identifier: Apache-2.0
//

#ifndef EXPRMOL_CONFIG_H_
#define EXPRMOL_CONFIG_H_

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "exprmol/generator.h"
#include "exprmol/vae.h"

namespace exprmol {

class ConfigError: public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Input and output locations. Empty means "not set"; command-line
/// arguments take precedence.
struct PathConfig {
  std::string profiles;
  std::string pairs;
  std::string vae_checkpoint;
  std::string gen_checkpoint;
  std::string ligands;
  std::string output_dir = ".";

  friend bool operator==(const PathConfig &, const PathConfig &) = default;
};

/// Everything a pipeline run depends on. The master seed overrides the seeds
/// inside vae and gen.
struct RunConfig {
  VaeConfig vae;
  GenConfig gen;
  PathConfig paths;
  std::uint64_t seed = 0;
  bool standardize = true;
  // Longest accepted SMILES string in characters.
  std::size_t max_smiles_length = 80;
  double train_fraction = 0.8;
  double validation_fraction = 0.1;
  std::size_t generate_count = 1000;

  // Copies the master seed into vae and gen and validates them.
  void finalize();

  friend bool operator==(const RunConfig &, const RunConfig &) = default;
};

nlohmann::json vae_config_to_json(const VaeConfig &c);
nlohmann::json gen_config_to_json(const GenConfig &c);
nlohmann::json run_config_to_json(const RunConfig &c);
// Missing keys keep their defaults; unknown keys and wrong types throw
// ConfigError naming the key.
VaeConfig vae_config_from_json(const nlohmann::json &j, VaeConfig base = {});
GenConfig gen_config_from_json(const nlohmann::json &j, GenConfig base = {});
RunConfig run_config_from_json(const nlohmann::json &j, RunConfig base = {});
RunConfig load_run_config(const std::filesystem::path &path);

} // namespace exprmol

#endif // EXPRMOL_CONFIG_H_
