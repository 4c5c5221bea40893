//
// SPDX-License-Identifier: Apache-2.0
//

#include "exprmol/config.h"

#include <fstream>
#include <set>

namespace exprmol {
namespace {
  using nlohmann::json;

  // Reads j[key] into out when present, with a readable error on bad types.
  class Reader {
  public:
    Reader(const json &j, std::string scope): j_(j), scope_(std::move(scope)) {
      if (!j_.is_object())
        throw ConfigError(where("") + " must be an object");
    }

    template <class T>
    Reader &get(const char *key, T &out) {
      seen_.insert(key);
      auto it = j_.find(key);
      if (it == j_.end())
        return *this;
      try {
        out = it->template get<T>();
      } catch (const json::exception &) {
        throw ConfigError("config key " + where(key) + " has the wrong type");
      }
      return *this;
    }

    Reader &object(const char *key) {
      seen_.insert(key);
      return *this;
    }

    void finish() const {
      for (const auto &[key, value]: j_.items()) {
        if (!seen_.count(key))
          throw ConfigError("unknown config key " + where(key));
      }
    }

  private:
    std::string where(const std::string &key) const {
      if (scope_.empty())
        return key.empty() ? "config" : "\"" + key + "\"";
      return "\"" + scope_ + (key.empty() ? "" : "." + key) + "\"";
    }

    const json &j_;
    std::string scope_;
    std::set<std::string> seen_;
  };

  // json happily converts -1 to a huge size_t.
  void reject_negative(const json &j, const char *key) {
    if (j.is_object() && j.contains(key) && j[key].is_number_integer()
        && j[key].get<long long>() < 0)
      throw ConfigError("config key \"" + std::string(key) + "\" must be non-negative");
  }
} // namespace

void RunConfig::finalize() {
  vae.seed = seed;
  gen.seed = seed;
  vae.validate();
  gen.validate();
  if (!(train_fraction > 0.0) || !(validation_fraction >= 0.0)
      || train_fraction + validation_fraction > 1.0) {
    throw ConfigError("train_fraction and validation_fraction must be positive and sum to "
                      "at most 1");
  }
  if (max_smiles_length == 0)
    throw ConfigError("max_smiles_length must be positive");
  if (generate_count == 0)
    throw ConfigError("generate_count must be positive");
}

json vae_config_to_json(const VaeConfig &c) {
  return { { "encoder_widths", c.encoder_widths },
           { "latent_dim", c.latent_dim },
           { "decoder_widths", c.decoder_widths },
           { "dropout", c.dropout },
           { "learning_rate", c.learning_rate },
           { "batch_size", c.batch_size },
           { "epochs", c.epochs },
           { "beta", c.beta },
           { "clip_norm", c.clip_norm },
           { "seed", c.seed } };
}

json gen_config_to_json(const GenConfig &c) {
  return { { "embedding_dim", c.embedding_dim },
           { "hidden_dim", c.hidden_dim },
           { "layers", c.layers },
           { "dropout", c.dropout },
           { "learning_rate", c.learning_rate },
           { "batch_size", c.batch_size },
           { "epochs", c.epochs },
           { "max_length", c.max_length },
           { "temperature", c.temperature },
           { "clip_norm", c.clip_norm },
           { "probe_count", c.probe_count },
           { "seed", c.seed } };
}

json run_config_to_json(const RunConfig &c) {
  return { { "vae", vae_config_to_json(c.vae) },
           { "gen", gen_config_to_json(c.gen) },
           { "paths",
             { { "profiles", c.paths.profiles },
               { "pairs", c.paths.pairs },
               { "vae_checkpoint", c.paths.vae_checkpoint },
               { "gen_checkpoint", c.paths.gen_checkpoint },
               { "ligands", c.paths.ligands },
               { "output_dir", c.paths.output_dir } } },
           { "seed", c.seed },
           { "standardize", c.standardize },
           { "max_smiles_length", c.max_smiles_length },
           { "train_fraction", c.train_fraction },
           { "validation_fraction", c.validation_fraction },
           { "generate_count", c.generate_count } };
}

VaeConfig vae_config_from_json(const json &j, VaeConfig c) {
  for (const char *key: { "latent_dim", "batch_size", "epochs", "seed" })
    reject_negative(j, key);
  Reader r(j, "vae");
  r.get("encoder_widths", c.encoder_widths)
      .get("latent_dim", c.latent_dim)
      .get("decoder_widths", c.decoder_widths)
      .get("dropout", c.dropout)
      .get("learning_rate", c.learning_rate)
      .get("batch_size", c.batch_size)
      .get("epochs", c.epochs)
      .get("beta", c.beta)
      .get("clip_norm", c.clip_norm)
      .get("seed", c.seed)
      .finish();
  return c;
}

GenConfig gen_config_from_json(const json &j, GenConfig c) {
  for (const char *key: { "embedding_dim", "hidden_dim", "layers", "batch_size", "epochs",
                          "max_length", "probe_count", "seed" })
    reject_negative(j, key);
  Reader r(j, "gen");
  r.get("embedding_dim", c.embedding_dim)
      .get("hidden_dim", c.hidden_dim)
      .get("layers", c.layers)
      .get("dropout", c.dropout)
      .get("learning_rate", c.learning_rate)
      .get("batch_size", c.batch_size)
      .get("epochs", c.epochs)
      .get("max_length", c.max_length)
      .get("temperature", c.temperature)
      .get("clip_norm", c.clip_norm)
      .get("probe_count", c.probe_count)
      .get("seed", c.seed)
      .finish();
  return c;
}

RunConfig run_config_from_json(const json &j, RunConfig c) {
  for (const char *key: { "seed", "max_smiles_length", "generate_count" })
    reject_negative(j, key);
  Reader r(j, "");
  r.get("seed", c.seed)
      .get("standardize", c.standardize)
      .get("max_smiles_length", c.max_smiles_length)
      .get("train_fraction", c.train_fraction)
      .get("validation_fraction", c.validation_fraction)
      .get("generate_count", c.generate_count)
      .object("vae")
      .object("gen")
      .object("paths")
      .finish();
  if (j.contains("vae"))
    c.vae = vae_config_from_json(j["vae"], c.vae);
  if (j.contains("gen"))
    c.gen = gen_config_from_json(j["gen"], c.gen);
  if (j.contains("paths")) {
    Reader p(j["paths"], "paths");
    p.get("profiles", c.paths.profiles)
        .get("pairs", c.paths.pairs)
        .get("vae_checkpoint", c.paths.vae_checkpoint)
        .get("gen_checkpoint", c.paths.gen_checkpoint)
        .get("ligands", c.paths.ligands)
        .get("output_dir", c.paths.output_dir)
        .finish();
  }
  return c;
}

RunConfig load_run_config(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in)
    throw ConfigError("cannot open config file " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error &e) {
    throw ConfigError("malformed config file " + path.string() + ": " + e.what());
  }
  return run_config_from_json(j);
}

} // namespace exprmol
