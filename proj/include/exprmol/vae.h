//
// SPDX-License-Identifier: Apache-2.0
//

#ifndef EXPRMOL_VAE_H_
#define EXPRMOL_VAE_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "exprmol/autodiff.h"
#include "exprmol/parameters.h"
#include "exprmol/profile.h"
#include "exprmol/random.h"
#include "exprmol/tensor.h"

namespace exprmol {

struct VaeConfig {
  std::vector<std::size_t> encoder_widths = { 512, 256, 128 };
  std::size_t latent_dim = 64;
  std::vector<std::size_t> decoder_widths = { 128, 256, 512 };
  double dropout = 0.2;
  double learning_rate = 1e-4;
  std::size_t batch_size = 64;
  std::size_t epochs = 2000;
  double beta = 1.0;
  // Global gradient-norm clip; 0 disables.
  double clip_norm = 0.0;
  std::uint64_t seed = 0;

  // Throws std::invalid_argument naming the bad field.
  void validate() const;
  friend bool operator==(const VaeConfig &, const VaeConfig &) = default;
};

inline constexpr double kLogVarMin = -10.0;
inline constexpr double kLogVarMax = 10.0;

/// Encoder trunk, mu and log-variance heads, decoder. Hidden layers use ReLU
/// followed by dropout; heads and the output layer are linear.
class VaeModel {
public:
  VaeModel() = default;
  // Glorot-uniform weights, zero biases.
  VaeModel(VaeConfig config, std::size_t input_dim, Rng &rng);
  // Wraps existing parameters (checkpoint loading); checks names and shapes.
  VaeModel(VaeConfig config, std::size_t input_dim, ParameterSet params);

  const VaeConfig &config() const { return config_; }
  std::size_t input_dim() const { return input_dim_; }
  std::size_t latent_dim() const { return config_.latent_dim; }
  const ParameterSet &params() const { return params_; }
  ParameterSet &params() { return params_; }

  friend bool operator==(const VaeModel &, const VaeModel &) = default;

private:
  VaeConfig config_;
  std::size_t input_dim_ = 0;
  ParameterSet params_;
};

// Parameter layout for a config: (name, rows, cols) in creation order.
struct ParamSpec {
  std::string name;
  std::size_t rows;
  std::size_t cols;
};
std::vector<ParamSpec> vae_param_specs(const VaeConfig &config, std::size_t input_dim);

struct Encoded {
  Tensor mu;      // batch x latent
  Tensor log_var; // batch x latent, clamped
};

// Eval-mode encoder on a batch (rows = profiles).
Encoded encode(const VaeModel &model, const Tensor &x);
// Eval-mode decoder.
Tensor decode(const VaeModel &model, const Tensor &z);
// decode(encode(x).mu)
Tensor reconstruct(const VaeModel &model, const Tensor &x);

// z = mu + exp(log_var / 2) * eps, eps ~ N(0, I), drawn row-major.
Tensor reparameterize(const Tensor &mu, const Tensor &log_var, Rng &rng);
Var reparameterize(Var mu, Var log_var, Rng &rng);

struct VaeTape {
  Var mu;
  Var log_var;
  Var z;
  Var recon;
};
// Forward pass on a tape with bound parameters (ParameterSet::bind order).
VaeTape vae_forward(const VaeModel &model, const std::vector<Var> &params, Var x, Mode mode,
                    Rng &dropout_rng, Rng &noise_rng);

struct ElboVars {
  Var loss;
  Var recon;
  Var kl;
};
// recon = squared error summed over genes, averaged over the batch;
// kl = -1/2 sum(1 + log_var - mu^2 - exp(log_var)) averaged over the batch;
// loss = recon + beta * kl. With beta = 0 the KL term is left off the loss.
ElboVars elbo_loss(Var x, Var recon, Var mu, Var log_var, double beta);

struct ElboTerms {
  double loss;
  double recon;
  double kl;
};
ElboTerms elbo_terms(const Tensor &x, const Tensor &recon, const Tensor &mu,
                     const Tensor &log_var, double beta);

struct VaeEpochLog {
  std::size_t epoch; // 1-based
  double loss;
  double recon;
  double kl;
  // Deterministic (z = mu) loss on the validation rows; NaN without them.
  double validation_loss;
};

struct VaeTrainResult {
  VaeModel model;
  std::vector<VaeEpochLog> log;
  std::size_t best_epoch = 0;
};

using VaeEpochCallback = std::function<void(const VaeEpochLog &)>;

// Shuffled mini-batch Adam. With validation rows the returned model is the
// one with the lowest validation loss, otherwise the final one. Throws
// NumericError naming the epoch and batch on a non-finite loss.
VaeTrainResult train_vae(const Tensor &train, const Tensor *validation, const VaeConfig &config,
                         const VaeEpochCallback &on_epoch = {});

/// A trained encoder together with the input contract it was trained on.
struct FeatureExtractor {
  VaeModel model;
  std::vector<std::string> gene_ids;
  std::optional<NormalizationStats> stats;
};

// Gene ids must match exactly; stats are applied when present. Returns mu.
std::vector<double> extract_condition(const FeatureExtractor &fx, const Profile &profile);
Tensor extract_conditions(const FeatureExtractor &fx, const ProfileSet &set);
// Throws std::invalid_argument when the ids differ.
void require_gene_ids(const std::vector<std::string> &expected,
                      const std::vector<std::string> &actual);

// Rows of a profile set as a batch tensor.
Tensor profiles_to_tensor(const ProfileSet &set);

} // namespace exprmol

#endif // EXPRMOL_VAE_H_
