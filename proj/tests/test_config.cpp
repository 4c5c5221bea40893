//
// SPDX-License-Identifier: Apache-2.0
//

#include "exprmol/config.h"

#include <filesystem>
#include <fstream>

#include <gtest/gtest.h>

namespace exprmol {
namespace {

using nlohmann::json;

TEST(ConfigTest, DefaultsMatchReferenceArchitecture) {
  const RunConfig c;
  EXPECT_EQ(c.vae.encoder_widths, (std::vector<std::size_t> { 512, 256, 128 }));
  EXPECT_EQ(c.vae.latent_dim, 64u);
  EXPECT_EQ(c.vae.decoder_widths, (std::vector<std::size_t> { 128, 256, 512 }));
  EXPECT_EQ(c.vae.epochs, 2000u);
  EXPECT_EQ(c.gen.layers, 3u);
  EXPECT_EQ(c.gen.epochs, 300u);
  EXPECT_EQ(c.generate_count, 1000u);
}

TEST(ConfigTest, JsonRoundTrip) {
  RunConfig c;
  c.seed = 42;
  c.vae.latent_dim = 7;
  c.vae.encoder_widths = { 9 };
  c.gen.hidden_dim = 33;
  c.gen.temperature = 0.7;
  c.paths.pairs = "pairs.tsv";
  c.standardize = false;
  c.train_fraction = 0.7;
  const RunConfig back = run_config_from_json(run_config_to_json(c));
  EXPECT_EQ(back, c);
}

TEST(ConfigTest, PartialOverridesKeepBase) {
  const RunConfig c = run_config_from_json(json::parse(R"({"vae": {"epochs": 5}, "seed": 3})"));
  EXPECT_EQ(c.vae.epochs, 5u);
  EXPECT_EQ(c.vae.latent_dim, 64u);
  EXPECT_EQ(c.seed, 3u);
}

TEST(ConfigTest, FinalizeCopiesSeed) {
  RunConfig c;
  c.seed = 17;
  c.finalize();
  EXPECT_EQ(c.vae.seed, 17u);
  EXPECT_EQ(c.gen.seed, 17u);
}

TEST(ConfigTest, RejectsUnknownKeys) {
  EXPECT_THROW(run_config_from_json(json::parse(R"({"sed": 1})")), ConfigError);
  EXPECT_THROW(run_config_from_json(json::parse(R"({"vae": {"latent": 1}})")), ConfigError);
  EXPECT_THROW(run_config_from_json(json::parse(R"({"paths": {"x": "y"}})")), ConfigError);
}

TEST(ConfigTest, RejectsWrongTypes) {
  EXPECT_THROW(run_config_from_json(json::parse(R"({"seed": "1"})")), ConfigError);
  EXPECT_THROW(run_config_from_json(json::parse(R"({"vae": {"dropout": true}})")), ConfigError);
  EXPECT_THROW(run_config_from_json(json::parse(R"({"vae": 3})")), ConfigError);
  EXPECT_THROW(run_config_from_json(json::parse("[]")), ConfigError);
}

TEST(ConfigTest, RejectsNegativeCounts) {
  EXPECT_THROW(run_config_from_json(json::parse(R"({"gen": {"epochs": -1}})")), ConfigError);
  EXPECT_THROW(run_config_from_json(json::parse(R"({"generate_count": -5})")), ConfigError);
}

TEST(ConfigTest, FinalizeValidates) {
  RunConfig c;
  c.train_fraction = 0.95;
  c.validation_fraction = 0.1;
  EXPECT_THROW(c.finalize(), ConfigError);
  c = RunConfig {};
  c.vae.beta = -1.0;
  EXPECT_THROW(c.finalize(), std::invalid_argument);
  c = RunConfig {};
  c.gen.temperature = 0.0;
  EXPECT_THROW(c.finalize(), std::invalid_argument);
}

TEST(ConfigTest, LoadFromFile) {
  const auto dir = std::filesystem::temp_directory_path() / "exprmol_config_test";
  std::filesystem::create_directories(dir);
  {
    std::ofstream(dir / "ok.json") << R"({"gen": {"layers": 1}})";
    std::ofstream(dir / "bad.json") << "{ not json";
  }
  EXPECT_EQ(load_run_config(dir / "ok.json").gen.layers, 1u);
  EXPECT_THROW(load_run_config(dir / "bad.json"), ConfigError);
  EXPECT_THROW(load_run_config(dir / "missing.json"), ConfigError);
  std::filesystem::remove_all(dir);
}

} // namespace
} // namespace exprmol
