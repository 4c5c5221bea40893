//
// SPDX-License-Identifier: Apache-2.0
//

#include "exprmol/vae.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "exprmol/adam.h"

namespace exprmol {
namespace {
  Tensor dense(const Tensor &x, const Tensor &w, const Tensor &b, bool relu) {
    Tensor y = kernels::matmul(x, w);
    for (std::size_t r = 0; r < y.rows(); ++r) {
      auto row = y.row(r);
      for (std::size_t c = 0; c < row.size(); ++c) {
        row[c] += b[c];
        if (relu && row[c] < 0.0)
          row[c] = 0.0;
      }
    }
    return y;
  }

  Var dense(Var x, Var w, Var b) {
    return add(matmul(x, w), b);
  }

  Tensor gather(const Tensor &x, std::span<const std::size_t> rows) {
    Tensor out = Tensor::matrix(rows.size(), x.cols());
    for (std::size_t i = 0; i < rows.size(); ++i)
      std::copy_n(x.row(rows[i]).begin(), x.cols(), out.row(i).begin());
    return out;
  }
} // namespace

void VaeConfig::validate() const {
  auto positive = [](const std::vector<std::size_t> &w) {
    return !w.empty() && std::all_of(w.begin(), w.end(), [](std::size_t v) { return v > 0; });
  };
  if (!positive(encoder_widths))
    throw std::invalid_argument("vae.encoder_widths must be non-empty and positive");
  if (!positive(decoder_widths))
    throw std::invalid_argument("vae.decoder_widths must be non-empty and positive");
  if (latent_dim == 0)
    throw std::invalid_argument("vae.latent_dim must be positive");
  if (!(dropout >= 0.0 && dropout < 1.0))
    throw std::invalid_argument("vae.dropout must be in [0, 1)");
  if (!(learning_rate > 0.0))
    throw std::invalid_argument("vae.learning_rate must be positive");
  if (batch_size == 0)
    throw std::invalid_argument("vae.batch_size must be positive");
  if (!(beta >= 0.0))
    throw std::invalid_argument("vae.beta must be non-negative");
  if (!(clip_norm >= 0.0))
    throw std::invalid_argument("vae.clip_norm must be non-negative");
}

std::vector<ParamSpec> vae_param_specs(const VaeConfig &config, std::size_t input_dim) {
  std::vector<ParamSpec> specs;
  std::size_t in = input_dim;
  for (std::size_t i = 0; i < config.encoder_widths.size(); ++i) {
    const std::size_t out = config.encoder_widths[i];
    specs.push_back({ "enc" + std::to_string(i) + ".w", in, out });
    specs.push_back({ "enc" + std::to_string(i) + ".b", 1, out });
    in = out;
  }
  specs.push_back({ "mu.w", in, config.latent_dim });
  specs.push_back({ "mu.b", 1, config.latent_dim });
  specs.push_back({ "logvar.w", in, config.latent_dim });
  specs.push_back({ "logvar.b", 1, config.latent_dim });
  in = config.latent_dim;
  for (std::size_t i = 0; i < config.decoder_widths.size(); ++i) {
    const std::size_t out = config.decoder_widths[i];
    specs.push_back({ "dec" + std::to_string(i) + ".w", in, out });
    specs.push_back({ "dec" + std::to_string(i) + ".b", 1, out });
    in = out;
  }
  specs.push_back({ "out.w", in, input_dim });
  specs.push_back({ "out.b", 1, input_dim });
  return specs;
}

VaeModel::VaeModel(VaeConfig config, std::size_t input_dim, Rng &rng)
    : config_(std::move(config)), input_dim_(input_dim) {
  config_.validate();
  if (input_dim == 0)
    throw std::invalid_argument("vae: input dimension must be positive");
  for (const auto &s: vae_param_specs(config_, input_dim)) {
    if (s.rows == 1)
      params_.add(s.name, Tensor::matrix(1, s.cols));
    else
      params_.add(s.name, glorot_uniform(s.rows, s.cols, rng));
  }
}

VaeModel::VaeModel(VaeConfig config, std::size_t input_dim, ParameterSet params)
    : config_(std::move(config)), input_dim_(input_dim), params_(std::move(params)) {
  config_.validate();
  const auto specs = vae_param_specs(config_, input_dim);
  if (specs.size() != params_.size())
    throw std::invalid_argument("vae: expected " + std::to_string(specs.size())
                                + " parameters, got " + std::to_string(params_.size()));
  for (std::size_t i = 0; i < specs.size(); ++i) {
    const auto &p = params_[i];
    if (p.name != specs[i].name || p.value.rows() != specs[i].rows
        || p.value.cols() != specs[i].cols) {
      throw std::invalid_argument("vae: parameter " + std::to_string(i) + " is " + p.name + " "
                                  + p.value.shape_string() + ", expected " + specs[i].name);
    }
  }
}

Encoded encode(const VaeModel &model, const Tensor &x) {
  if (x.cols() != model.input_dim()) {
    throw ShapeError("encode: profile has " + std::to_string(x.cols()) + " genes, model expects "
                     + std::to_string(model.input_dim()));
  }
  const auto &p = model.params();
  Tensor h = x;
  std::size_t k = 0;
  for (std::size_t i = 0; i < model.config().encoder_widths.size(); ++i, k += 2)
    h = dense(h, p[k].value, p[k + 1].value, true);
  Encoded e;
  e.mu = dense(h, p[k].value, p[k + 1].value, false);
  e.log_var = dense(h, p[k + 2].value, p[k + 3].value, false);
  for (double &v: e.log_var.values())
    v = std::clamp(v, kLogVarMin, kLogVarMax);
  return e;
}

Tensor decode(const VaeModel &model, const Tensor &z) {
  if (z.cols() != model.latent_dim())
    throw ShapeError("decode: latent width " + std::to_string(z.cols()) + ", model expects "
                     + std::to_string(model.latent_dim()));
  const auto &p = model.params();
  std::size_t k = 2 * model.config().encoder_widths.size() + 4;
  Tensor h = z;
  for (std::size_t i = 0; i < model.config().decoder_widths.size(); ++i, k += 2)
    h = dense(h, p[k].value, p[k + 1].value, true);
  return dense(h, p[k].value, p[k + 1].value, false);
}

Tensor reconstruct(const VaeModel &model, const Tensor &x) {
  return decode(model, encode(model, x).mu);
}

Tensor reparameterize(const Tensor &mu, const Tensor &log_var, Rng &rng) {
  require_same_shape(mu, log_var, "reparameterize");
  Tensor z = mu;
  for (std::size_t i = 0; i < z.size(); ++i)
    z[i] += std::exp(0.5 * log_var[i]) * rng.normal();
  return z;
}

Var reparameterize(Var mu, Var log_var, Rng &rng) {
  require_same_shape(mu.value(), log_var.value(), "reparameterize");
  Tensor eps(mu.value().shape());
  for (double &v: eps.values())
    v = rng.normal();
  Var e = mu.tape()->constant(std::move(eps));
  return add(mu, mul(exp(scale(log_var, 0.5)), e));
}

VaeTape vae_forward(const VaeModel &model, const std::vector<Var> &params, Var x, Mode mode,
                    Rng &dropout_rng, Rng &noise_rng) {
  const double p = model.config().dropout;
  Var h = x;
  std::size_t k = 0;
  for (std::size_t i = 0; i < model.config().encoder_widths.size(); ++i, k += 2)
    h = dropout(relu(dense(h, params[k], params[k + 1])), p, mode, dropout_rng);
  VaeTape t;
  t.mu = dense(h, params[k], params[k + 1]);
  t.log_var = clamp(dense(h, params[k + 2], params[k + 3]), kLogVarMin, kLogVarMax);
  k += 4;
  t.z = mode == Mode::kTrain ? reparameterize(t.mu, t.log_var, noise_rng) : t.mu;
  h = t.z;
  for (std::size_t i = 0; i < model.config().decoder_widths.size(); ++i, k += 2)
    h = dropout(relu(dense(h, params[k], params[k + 1])), p, mode, dropout_rng);
  t.recon = dense(h, params[k], params[k + 1]);
  return t;
}

ElboVars elbo_loss(Var x, Var recon, Var mu, Var log_var, double beta) {
  const double batch = static_cast<double>(x.value().rows());
  const double genes = static_cast<double>(x.value().cols());
  ElboVars e;
  e.recon = scale(mse(recon, x), genes);
  Var inner = sub(sub(add_scalar(log_var, 1.0), square(mu)), exp(log_var));
  e.kl = scale(sum(inner), -0.5 / batch);
  e.loss = beta == 0.0 ? e.recon : add(e.recon, scale(e.kl, beta));
  return e;
}

ElboTerms elbo_terms(const Tensor &x, const Tensor &recon, const Tensor &mu,
                     const Tensor &log_var, double beta) {
  require_same_shape(x, recon, "elbo_terms");
  require_same_shape(mu, log_var, "elbo_terms");
  const double batch = static_cast<double>(x.rows());
  double se = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i)
    se += (recon[i] - x[i]) * (recon[i] - x[i]);
  double kl = 0.0;
  for (std::size_t i = 0; i < mu.size(); ++i)
    kl += 1.0 + log_var[i] - mu[i] * mu[i] - std::exp(log_var[i]);
  ElboTerms t;
  t.recon = se / batch;
  t.kl = -0.5 * kl / batch;
  t.loss = t.recon + beta * t.kl;
  return t;
}

VaeTrainResult train_vae(const Tensor &train, const Tensor *validation, const VaeConfig &config,
                         const VaeEpochCallback &on_epoch) {
  config.validate();
  if (train.rows() == 0)
    throw std::invalid_argument("train_vae: no training profiles");
  if (validation && validation->rows() > 0 && validation->cols() != train.cols())
    throw ShapeError("train_vae: validation width differs from training width");
  const bool use_validation = validation && validation->rows() > 0;

  Rng init_rng(derive_seed(config.seed, Stream::kVaeInit));
  Rng shuffle_rng(derive_seed(config.seed, Stream::kVaeShuffle));
  Rng dropout_rng(derive_seed(config.seed, Stream::kVaeDropout));
  Rng noise_rng(derive_seed(config.seed, Stream::kVaeNoise));

  VaeTrainResult result;
  result.model = VaeModel(config, train.cols(), init_rng);
  VaeModel &model = result.model;
  AdamState adam(model.params(), AdamOptions { config.learning_rate });
  ParameterSet best = model.params();
  double best_loss = std::numeric_limits<double>::infinity();

  const std::size_t n = train.rows();
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i)
    order[i] = i;

  for (std::size_t epoch = 1; epoch <= config.epochs; ++epoch) {
    shuffle_rng.shuffle(order);
    double loss_sum = 0.0, recon_sum = 0.0, kl_sum = 0.0;
    for (std::size_t start = 0, b = 1; start < n; start += config.batch_size, ++b) {
      const std::size_t end = std::min(n, start + config.batch_size);
      const std::span<const std::size_t> rows(order.data() + start, end - start);
      Tape tape;
      const auto bound = model.params().bind(tape, true);
      Var x = tape.constant(gather(train, rows));
      const auto fwd = vae_forward(model, bound, x, Mode::kTrain, dropout_rng, noise_rng);
      const auto elbo = elbo_loss(x, fwd.recon, fwd.mu, fwd.log_var, config.beta);
      const double loss = elbo.loss.value().item();
      if (!std::isfinite(loss)) {
        throw NumericError("train_vae: non-finite loss at epoch " + std::to_string(epoch)
                           + ", batch " + std::to_string(b));
      }
      auto grads = collect_gradients(tape.backward(elbo.loss), bound);
      if (config.clip_norm > 0.0)
        clip_global_norm(grads, config.clip_norm);
      adam.step(model.params(), grads);
      const double w = static_cast<double>(rows.size());
      loss_sum += w * loss;
      recon_sum += w * elbo.recon.value().item();
      kl_sum += w * elbo.kl.value().item();
    }
    VaeEpochLog row { epoch, loss_sum / double(n), recon_sum / double(n), kl_sum / double(n),
                      std::numeric_limits<double>::quiet_NaN() };
    if (use_validation) {
      const Encoded e = encode(model, *validation);
      row.validation_loss =
          elbo_terms(*validation, decode(model, e.mu), e.mu, e.log_var, config.beta).loss;
      if (row.validation_loss < best_loss) {
        best_loss = row.validation_loss;
        best = model.params();
        result.best_epoch = epoch;
      }
    }
    result.log.push_back(row);
    if (on_epoch)
      on_epoch(row);
  }
  if (use_validation && result.best_epoch > 0)
    model.params() = std::move(best);
  else
    result.best_epoch = config.epochs;
  return result;
}

void require_gene_ids(const std::vector<std::string> &expected,
                      const std::vector<std::string> &actual) {
  if (expected == actual)
    return;
  if (expected.size() != actual.size()) {
    throw std::invalid_argument("gene header mismatch: model has " + std::to_string(expected.size())
                                + " genes, input has " + std::to_string(actual.size()));
  }
  for (std::size_t i = 0; i < expected.size(); ++i) {
    if (expected[i] != actual[i]) {
      throw std::invalid_argument("gene header mismatch at column " + std::to_string(i + 2)
                                  + ": model has \"" + expected[i] + "\", input has \""
                                  + actual[i] + "\"");
    }
  }
}

std::vector<double> extract_condition(const FeatureExtractor &fx, const Profile &profile) {
  std::vector<double> values =
      fx.stats ? apply_stats(profile.values, *fx.stats) : profile.values;
  if (values.size() != fx.model.input_dim()) {
    throw ShapeError("extract_condition: profile has " + std::to_string(values.size())
                     + " genes, model expects " + std::to_string(fx.model.input_dim()));
  }
  const std::size_t n = values.size();
  const Tensor mu = encode(fx.model, Tensor({ 1, n }, std::move(values))).mu;
  return { mu.values().begin(), mu.values().end() };
}

Tensor extract_conditions(const FeatureExtractor &fx, const ProfileSet &set) {
  require_gene_ids(fx.gene_ids, set.gene_ids);
  Tensor out = Tensor::matrix(set.size(), fx.model.latent_dim());
  for (std::size_t i = 0; i < set.size(); ++i) {
    const auto c = extract_condition(fx, set.profiles[i]);
    std::copy(c.begin(), c.end(), out.row(i).begin());
  }
  return out;
}

Tensor profiles_to_tensor(const ProfileSet &set) {
  Tensor out = Tensor::matrix(set.size(), set.gene_count());
  for (std::size_t i = 0; i < set.size(); ++i) {
    if (set.profiles[i].values.size() != set.gene_count())
      throw ShapeError("profile " + set.profiles[i].sample_id + " has the wrong length");
    std::copy(set.profiles[i].values.begin(), set.profiles[i].values.end(), out.row(i).begin());
  }
  return out;
}

} // namespace exprmol
