//
// SPDX-License-Identifier: Apache-2.0
//

#ifndef EXPRMOL_GENERATOR_H_
#define EXPRMOL_GENERATOR_H_

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "exprmol/autodiff.h"
#include "exprmol/parameters.h"
#include "exprmol/random.h"
#include "exprmol/tensor.h"
#include "exprmol/vae.h"
#include "exprmol/vocabulary.h"

namespace exprmol {

struct GenConfig {
  std::size_t embedding_dim = 128;
  std::size_t hidden_dim = 256;
  std::size_t layers = 3;
  double dropout = 0.1;
  double learning_rate = 5e-4;
  std::size_t batch_size = 64;
  std::size_t epochs = 300;
  std::size_t max_length = 100;
  double temperature = 1.0;
  // Global gradient-norm clip; 0 disables.
  double clip_norm = 5.0;
  // Conditions sampled once per epoch for the validity curve.
  std::size_t probe_count = 64;
  std::uint64_t seed = 0;

  void validate() const;
  friend bool operator==(const GenConfig &, const GenConfig &) = default;
};

/// Token embedding, stacked LSTM layers and a vocabulary projection. The
/// condition is concatenated to the embedding at every step; gates are
/// ordered input, forget, cell, output.
class GenModel {
public:
  GenModel() = default;
  // Glorot-uniform weights, zero biases except the forget gate (1.0).
  GenModel(GenConfig config, Vocabulary vocab, std::size_t condition_dim, Rng &rng);
  GenModel(GenConfig config, Vocabulary vocab, std::size_t condition_dim, ParameterSet params);

  const GenConfig &config() const { return config_; }
  GenConfig &config() { return config_; }
  const Vocabulary &vocab() const { return vocab_; }
  std::size_t condition_dim() const { return condition_dim_; }
  const ParameterSet &params() const { return params_; }
  ParameterSet &params() { return params_; }

  friend bool operator==(const GenModel &, const GenModel &) = default;

private:
  GenConfig config_;
  Vocabulary vocab_;
  std::size_t condition_dim_ = 0;
  ParameterSet params_;
};

std::vector<ParamSpec> generator_param_specs(const GenConfig &config, std::size_t vocab_size,
                                             std::size_t condition_dim);

struct GenLoss {
  Var loss;                  // summed over positions, averaged over the batch
  std::size_t token_count; // predicted (non-PAD) positions
};

// Teacher-forced forward on a tape. Every sequence starts with <SOS> and
// ends with <EOS>; shorter sequences are padded and the padding is masked.
// Throws std::invalid_argument on malformed sequences.
GenLoss generator_loss(const GenModel &model, const std::vector<Var> &params,
                       std::span<const std::vector<int>> sequences, const Tensor &conditions,
                       Mode mode, Rng &dropout_rng);

// Eval-mode value of generator_loss.
double nll_loss(const GenModel &model, std::span<const std::vector<int>> sequences,
                const Tensor &conditions);

struct Sample {
  std::string smiles;
  std::size_t token_count = 0; // excluding <SOS>/<EOS>
  bool truncated = false;      // max_length reached without <EOS>
};

// Draws tokens from softmax(logits / temperature) until <EOS> or max_length
// tokens. <PAD>, <SOS> and <UNK> are never drawn.
Sample sample(const GenModel &model, std::span<const double> condition, Rng &rng,
              double temperature, std::size_t max_length);

// One draw per condition row; row i uses rngs[i].
std::vector<Sample> sample_rows(const GenModel &model, const Tensor &conditions,
                                std::vector<Rng> &rngs, double temperature,
                                std::size_t max_length);

struct GeneratedMolecule {
  std::size_t index = 0;
  std::string smiles;
  bool valid = false;
  bool truncated = false;
  std::string canonical; // empty when invalid
};

struct GeneratedBatch {
  std::vector<GeneratedMolecule> molecules;
  std::size_t valid = 0;
  std::size_t truncated = 0;
};

// `count` samples for one condition. Sample i draws from the stream
// derive_seed(seed, kSample, i), so the output depends only on the seed and
// the count.
GeneratedBatch generate_batch(const GenModel &model, std::span<const double> condition,
                              std::size_t count, std::uint64_t seed, double temperature,
                              std::size_t max_length);

struct GenEpochLog {
  std::size_t epoch; // 1-based
  double loss;       // mean per-sequence NLL
  double token_nll;  // mean per-token NLL
  double validity;   // valid fraction of the probe samples
  double validation_loss; // NaN without validation data
};

struct GenTrainResult {
  GenModel model;
  std::vector<GenEpochLog> log;
  std::size_t best_epoch = 0;
};

struct GenTrainData {
  std::vector<std::vector<int>> sequences;
  Tensor conditions; // one row per sequence
};

using GenEpochCallback = std::function<void(const GenEpochLog &)>;

// Shuffled mini-batch Adam. Probe conditions are drawn once from the
// training conditions. With validation data the returned model is the one
// with the lowest validation loss.
GenTrainResult train_generator(const Vocabulary &vocab, const GenTrainData &train,
                               const GenTrainData *validation, const GenConfig &config,
                               const GenEpochCallback &on_epoch = {});

} // namespace exprmol

#endif // EXPRMOL_GENERATOR_H_
