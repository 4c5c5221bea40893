//
// SPDX-License-Identifier: Apache-2.0
//

#include "exprmol/generator.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "exprmol/adam.h"
#include "exprmol/canonical.h"
#include "exprmol/smiles.h"

namespace exprmol {
namespace {
  constexpr std::size_t kSampleChunk = 64;

  double sigmoid_value(double x) {
    return 1.0 / (1.0 + std::exp(-x));
  }

  void check_sequences(const GenModel &model, std::span<const std::vector<int>> sequences,
                       const Tensor &conditions) {
    if (sequences.empty())
      throw std::invalid_argument("generator: empty batch");
    if (conditions.rows() != sequences.size() || conditions.cols() != model.condition_dim()) {
      throw ShapeError("generator: conditions " + conditions.shape_string() + " for "
                       + std::to_string(sequences.size()) + " sequences of condition width "
                       + std::to_string(model.condition_dim()));
    }
    const int v = model.vocab().size();
    for (std::size_t s = 0; s < sequences.size(); ++s) {
      const auto &seq = sequences[s];
      if (seq.size() < 2 || seq.front() != Vocabulary::kSos || seq.back() != Vocabulary::kEos)
        throw std::invalid_argument("generator: sequence " + std::to_string(s)
                                    + " must start with <SOS> and end with <EOS>");
      for (std::size_t i = 1; i + 1 < seq.size(); ++i) {
        if (seq[i] < 0 || seq[i] >= v)
          throw std::invalid_argument("generator: token id " + std::to_string(seq[i])
                                      + " out of range in sequence " + std::to_string(s));
        if (seq[i] == Vocabulary::kPad || seq[i] == Vocabulary::kSos
            || seq[i] == Vocabulary::kEos) {
          throw std::invalid_argument("generator: misplaced special token in sequence "
                                      + std::to_string(s));
        }
      }
    }
  }

  // Plain forward state for sampling.
  struct LstmState {
    std::vector<Tensor> h;
    std::vector<Tensor> c;
  };

  Tensor step_logits(const GenModel &model, const Tensor &conditions, std::span<const int> ids,
                     LstmState &st) {
    const auto &cfg = model.config();
    const auto &p = model.params();
    const std::size_t k = ids.size();
    const std::size_t e = cfg.embedding_dim;
    const std::size_t d = model.condition_dim();
    const std::size_t hd = cfg.hidden_dim;
    const Tensor &embed = p[0].value;

    Tensor inp = Tensor::matrix(k, e + d);
    for (std::size_t r = 0; r < k; ++r) {
      auto row = inp.row(r);
      std::copy_n(embed.row(ids[r]).begin(), e, row.begin());
      std::copy_n(conditions.row(r).begin(), d, row.begin() + e);
    }
    for (std::size_t l = 0; l < cfg.layers; ++l) {
      const Tensor &w = p[1 + 2 * l].value;
      const Tensor &b = p[2 + 2 * l].value;
      const std::size_t in = inp.cols();
      Tensor x = Tensor::matrix(k, in + hd);
      for (std::size_t r = 0; r < k; ++r) {
        auto row = x.row(r);
        std::copy_n(inp.row(r).begin(), in, row.begin());
        std::copy_n(st.h[l].row(r).begin(), hd, row.begin() + in);
      }
      Tensor z = kernels::matmul(x, w);
      for (std::size_t r = 0; r < k; ++r) {
        auto zr = z.row(r);
        auto hr = st.h[l].row(r);
        auto cr = st.c[l].row(r);
        for (std::size_t j = 0; j < hd; ++j) {
          const double ig = sigmoid_value(zr[j] + b[j]);
          const double fg = sigmoid_value(zr[hd + j] + b[hd + j]);
          const double gg = std::tanh(zr[2 * hd + j] + b[2 * hd + j]);
          const double og = sigmoid_value(zr[3 * hd + j] + b[3 * hd + j]);
          cr[j] = fg * cr[j] + ig * gg;
          hr[j] = og * std::tanh(cr[j]);
        }
      }
      inp = st.h[l];
    }
    const Tensor &ow = p[1 + 2 * cfg.layers].value;
    const Tensor &ob = p[2 + 2 * cfg.layers].value;
    Tensor logits = kernels::matmul(inp, ow);
    for (std::size_t r = 0; r < k; ++r) {
      auto row = logits.row(r);
      for (std::size_t c = 0; c < row.size(); ++c)
        row[c] += ob[c];
    }
    return logits;
  }

  int draw(std::span<const double> logits, double temperature, Rng &rng) {
    const std::size_t v = logits.size();
    double m = -std::numeric_limits<double>::infinity();
    for (std::size_t i = Vocabulary::kEos; i < v; ++i) {
      if (i != Vocabulary::kUnk)
        m = std::max(m, logits[i] / temperature);
    }
    std::vector<double> w(v, 0.0);
    double total = 0.0;
    for (std::size_t i = Vocabulary::kEos; i < v; ++i) {
      if (i == Vocabulary::kUnk)
        continue;
      w[i] = std::exp(logits[i] / temperature - m);
      total += w[i];
    }
    const double u = rng.uniform() * total;
    double acc = 0.0;
    int last = Vocabulary::kEos;
    for (std::size_t i = Vocabulary::kEos; i < v; ++i) {
      if (w[i] == 0.0)
        continue;
      acc += w[i];
      last = static_cast<int>(i);
      if (u < acc)
        return last;
    }
    return last;
  }
} // namespace

void GenConfig::validate() const {
  if (embedding_dim == 0 || hidden_dim == 0 || layers == 0)
    throw std::invalid_argument("gen: embedding_dim, hidden_dim and layers must be positive");
  if (!(dropout >= 0.0 && dropout < 1.0))
    throw std::invalid_argument("gen.dropout must be in [0, 1)");
  if (!(learning_rate > 0.0))
    throw std::invalid_argument("gen.learning_rate must be positive");
  if (batch_size == 0)
    throw std::invalid_argument("gen.batch_size must be positive");
  if (max_length < 2)
    throw std::invalid_argument("gen.max_length must be at least 2");
  if (!(temperature > 0.0))
    throw std::invalid_argument("gen.temperature must be positive");
  if (!(clip_norm >= 0.0))
    throw std::invalid_argument("gen.clip_norm must be non-negative");
}

std::vector<ParamSpec> generator_param_specs(const GenConfig &config, std::size_t vocab_size,
                                             std::size_t condition_dim) {
  std::vector<ParamSpec> specs;
  specs.push_back({ "embed", vocab_size, config.embedding_dim });
  std::size_t in = config.embedding_dim + condition_dim;
  for (std::size_t l = 0; l < config.layers; ++l) {
    specs.push_back({ "lstm" + std::to_string(l) + ".w", in + config.hidden_dim,
                      4 * config.hidden_dim });
    specs.push_back({ "lstm" + std::to_string(l) + ".b", 1, 4 * config.hidden_dim });
    in = config.hidden_dim;
  }
  specs.push_back({ "out.w", config.hidden_dim, vocab_size });
  specs.push_back({ "out.b", 1, vocab_size });
  return specs;
}

GenModel::GenModel(GenConfig config, Vocabulary vocab, std::size_t condition_dim, Rng &rng)
    : config_(std::move(config)), vocab_(std::move(vocab)), condition_dim_(condition_dim) {
  config_.validate();
  const std::size_t hd = config_.hidden_dim;
  for (const auto &s: generator_param_specs(config_, vocab_.size(), condition_dim)) {
    if (s.rows > 1 || s.name == "embed") {
      params_.add(s.name, glorot_uniform(s.rows, s.cols, rng));
      continue;
    }
    Tensor b = Tensor::matrix(1, s.cols);
    if (s.name != "out.b") {
      for (std::size_t j = hd; j < 2 * hd; ++j)
        b[j] = 1.0;
    }
    params_.add(s.name, std::move(b));
  }
}

GenModel::GenModel(GenConfig config, Vocabulary vocab, std::size_t condition_dim,
                   ParameterSet params)
    : config_(std::move(config)), vocab_(std::move(vocab)), condition_dim_(condition_dim),
      params_(std::move(params)) {
  config_.validate();
  const auto specs = generator_param_specs(config_, vocab_.size(), condition_dim);
  if (specs.size() != params_.size())
    throw std::invalid_argument("generator: expected " + std::to_string(specs.size())
                                + " parameters, got " + std::to_string(params_.size()));
  for (std::size_t i = 0; i < specs.size(); ++i) {
    const auto &p = params_[i];
    if (p.name != specs[i].name || p.value.rows() != specs[i].rows
        || p.value.cols() != specs[i].cols) {
      throw std::invalid_argument("generator: parameter " + std::to_string(i) + " is " + p.name
                                  + " " + p.value.shape_string() + ", expected "
                                  + specs[i].name);
    }
  }
}

GenLoss generator_loss(const GenModel &model, const std::vector<Var> &params,
                       std::span<const std::vector<int>> sequences, const Tensor &conditions,
                       Mode mode, Rng &dropout_rng) {
  check_sequences(model, sequences, conditions);
  const auto &cfg = model.config();
  const std::size_t batch = sequences.size();
  const std::size_t hd = cfg.hidden_dim;
  std::size_t longest = 0;
  for (const auto &s: sequences)
    longest = std::max(longest, s.size());
  const std::size_t steps = longest - 1;

  Tape &tape = *params[0].tape();
  Var cond = tape.constant(conditions);
  std::vector<Var> h(cfg.layers), c(cfg.layers);
  for (std::size_t l = 0; l < cfg.layers; ++l) {
    h[l] = tape.constant(Tensor::matrix(batch, hd));
    c[l] = tape.constant(Tensor::matrix(batch, hd));
  }

  std::vector<Var> outputs;
  outputs.reserve(steps);
  std::vector<int> targets(steps * batch, -1);
  std::vector<int> ids(batch);
  std::size_t token_count = 0;
  for (std::size_t t = 0; t < steps; ++t) {
    for (std::size_t b = 0; b < batch; ++b) {
      const auto &seq = sequences[b];
      ids[b] = t < seq.size() ? seq[t] : Vocabulary::kPad;
      if (t + 1 < seq.size()) {
        targets[t * batch + b] = seq[t + 1];
        ++token_count;
      }
    }
    const Var parts[] = { gather_rows(params[0], ids), cond };
    Var inp = concat(parts, 1);
    for (std::size_t l = 0; l < cfg.layers; ++l) {
      const Var xs[] = { inp, h[l] };
      Var z = add(matmul(concat(xs, 1), params[1 + 2 * l]), params[2 + 2 * l]);
      Var ig = sigmoid(slice(z, 1, 0, hd));
      Var fg = sigmoid(slice(z, 1, hd, 2 * hd));
      Var gg = tanh(slice(z, 1, 2 * hd, 3 * hd));
      Var og = sigmoid(slice(z, 1, 3 * hd, 4 * hd));
      c[l] = add(mul(fg, c[l]), mul(ig, gg));
      h[l] = mul(og, tanh(c[l]));
      inp = dropout(h[l], cfg.dropout, mode, dropout_rng);
    }
    outputs.push_back(inp);
  }
  Var stacked = concat(outputs, 0);
  Var logits = add(matmul(stacked, params[1 + 2 * cfg.layers]), params[2 + 2 * cfg.layers]);
  Var total = softmax_cross_entropy(logits, targets);
  return { scale(total, 1.0 / static_cast<double>(batch)), token_count };
}

double nll_loss(const GenModel &model, std::span<const std::vector<int>> sequences,
                const Tensor &conditions) {
  Tape tape;
  const auto bound = model.params().bind(tape, false);
  Rng unused(0);
  return generator_loss(model, bound, sequences, conditions, Mode::kEval, unused)
      .loss.value()
      .item();
}

std::vector<Sample> sample_rows(const GenModel &model, const Tensor &conditions,
                                std::vector<Rng> &rngs, double temperature,
                                std::size_t max_length) {
  if (!(temperature > 0.0))
    throw std::invalid_argument("sample: temperature must be positive");
  const std::size_t k = conditions.rows();
  if (conditions.cols() != model.condition_dim())
    throw ShapeError("sample: condition width " + std::to_string(conditions.cols())
                     + ", model expects " + std::to_string(model.condition_dim()));
  if (rngs.size() != k)
    throw std::invalid_argument("sample_rows: one rng per condition row");
  const auto &cfg = model.config();
  LstmState st;
  for (std::size_t l = 0; l < cfg.layers; ++l) {
    st.h.push_back(Tensor::matrix(k, cfg.hidden_dim));
    st.c.push_back(Tensor::matrix(k, cfg.hidden_dim));
  }
  std::vector<Sample> out(k);
  std::vector<int> ids(k, Vocabulary::kSos);
  std::vector<bool> done(k, false);
  std::size_t remaining = k;
  for (std::size_t step = 0; step < max_length && remaining > 0; ++step) {
    const Tensor logits = step_logits(model, conditions, ids, st);
    for (std::size_t r = 0; r < k; ++r) {
      if (done[r])
        continue;
      const int tok = draw(logits.row(r), temperature, rngs[r]);
      ids[r] = tok;
      if (tok == Vocabulary::kEos) {
        done[r] = true;
        --remaining;
        continue;
      }
      out[r].smiles += model.vocab().token(tok);
      ++out[r].token_count;
    }
  }
  for (std::size_t r = 0; r < k; ++r)
    out[r].truncated = !done[r];
  return out;
}

Sample sample(const GenModel &model, std::span<const double> condition, Rng &rng,
              double temperature, std::size_t max_length) {
  std::vector<Rng> rngs = { rng };
  Tensor cond({ 1, condition.size() }, std::vector<double>(condition.begin(), condition.end()));
  Sample s = sample_rows(model, cond, rngs, temperature, max_length)[0];
  rng = rngs[0];
  return s;
}

GeneratedBatch generate_batch(const GenModel &model, std::span<const double> condition,
                              std::size_t count, std::uint64_t seed, double temperature,
                              std::size_t max_length) {
  if (count == 0)
    throw std::invalid_argument("generate_batch: count must be at least 1");
  GeneratedBatch batch;
  for (std::size_t start = 0; start < count; start += kSampleChunk) {
    const std::size_t n = std::min(kSampleChunk, count - start);
    Tensor cond = Tensor::matrix(n, condition.size());
    std::vector<Rng> rngs;
    for (std::size_t i = 0; i < n; ++i) {
      std::copy(condition.begin(), condition.end(), cond.row(i).begin());
      rngs.emplace_back(derive_seed(seed, Stream::kSample, start + i));
    }
    auto samples = sample_rows(model, cond, rngs, temperature, max_length);
    for (std::size_t i = 0; i < n; ++i) {
      GeneratedMolecule m;
      m.index = start + i;
      m.smiles = std::move(samples[i].smiles);
      m.truncated = samples[i].truncated;
      auto parsed = parse_smiles(m.smiles);
      m.valid = parsed.ok();
      if (m.valid) {
        m.canonical = canonical_smiles(parsed.graph);
        ++batch.valid;
      }
      batch.truncated += m.truncated;
      batch.molecules.push_back(std::move(m));
    }
  }
  return batch;
}

GenTrainResult train_generator(const Vocabulary &vocab, const GenTrainData &train,
                               const GenTrainData *validation, const GenConfig &config,
                               const GenEpochCallback &on_epoch) {
  config.validate();
  const std::size_t n = train.sequences.size();
  if (n == 0)
    throw std::invalid_argument("train_generator: empty corpus");
  if (train.conditions.rows() != n)
    throw ShapeError("train_generator: one condition row per sequence");
  const std::size_t d = train.conditions.cols();
  const bool use_validation = validation && !validation->sequences.empty();

  Rng init_rng(derive_seed(config.seed, Stream::kGenInit));
  Rng shuffle_rng(derive_seed(config.seed, Stream::kGenShuffle));
  Rng dropout_rng(derive_seed(config.seed, Stream::kGenDropout));
  Rng probe_rng(derive_seed(config.seed, Stream::kProbe));

  GenTrainResult result;
  result.model = GenModel(config, vocab, d, init_rng);
  GenModel &model = result.model;
  AdamState adam(model.params(), AdamOptions { config.learning_rate });
  ParameterSet best = model.params();
  double best_loss = std::numeric_limits<double>::infinity();

  std::vector<std::size_t> probe_rows(n);
  for (std::size_t i = 0; i < n; ++i)
    probe_rows[i] = i;
  probe_rng.shuffle(probe_rows);
  Tensor probe;
  if (config.probe_count > 0) {
    probe = Tensor::matrix(config.probe_count, d);
    for (std::size_t i = 0; i < config.probe_count; ++i) {
      const auto src = train.conditions.row(probe_rows[i % n]);
      std::copy(src.begin(), src.end(), probe.row(i).begin());
    }
  }

  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i)
    order[i] = i;
  std::vector<std::vector<int>> batch_seqs;
  for (std::size_t epoch = 1; epoch <= config.epochs; ++epoch) {
    shuffle_rng.shuffle(order);
    double loss_sum = 0.0;
    std::size_t tokens = 0;
    for (std::size_t start = 0, b = 1; start < n; start += config.batch_size, ++b) {
      const std::size_t end = std::min(n, start + config.batch_size);
      batch_seqs.clear();
      Tensor cond = Tensor::matrix(end - start, d);
      for (std::size_t i = start; i < end; ++i) {
        batch_seqs.push_back(train.sequences[order[i]]);
        const auto src = train.conditions.row(order[i]);
        std::copy(src.begin(), src.end(), cond.row(i - start).begin());
      }
      Tape tape;
      const auto bound = model.params().bind(tape, true);
      const GenLoss gl = generator_loss(model, bound, batch_seqs, cond, Mode::kTrain,
                                        dropout_rng);
      const double loss = gl.loss.value().item();
      if (!std::isfinite(loss)) {
        throw NumericError("train_generator: non-finite loss at epoch " + std::to_string(epoch)
                           + ", batch " + std::to_string(b));
      }
      auto grads = collect_gradients(tape.backward(gl.loss), bound);
      if (config.clip_norm > 0.0)
        clip_global_norm(grads, config.clip_norm);
      adam.step(model.params(), grads);
      const double w = static_cast<double>(end - start);
      loss_sum += w * loss;
      tokens += gl.token_count;
    }

    GenEpochLog row { epoch, loss_sum / double(n), loss_sum / double(tokens), 0.0,
                      std::numeric_limits<double>::quiet_NaN() };
    if (config.probe_count > 0) {
      std::vector<Rng> rngs;
      for (std::size_t i = 0; i < config.probe_count; ++i)
        rngs.emplace_back(derive_seed(config.seed, Stream::kProbe, i + 1));
      const auto samples =
          sample_rows(model, probe, rngs, config.temperature, config.max_length);
      std::size_t valid = 0;
      for (const auto &s: samples)
        valid += is_valid_smiles(s.smiles);
      row.validity = double(valid) / double(samples.size());
    }
    if (use_validation) {
      const std::size_t m = validation->sequences.size();
      double total = 0.0;
      for (std::size_t start = 0; start < m; start += config.batch_size) {
        const std::size_t end = std::min(m, start + config.batch_size);
        Tensor cond = Tensor::matrix(end - start, d);
        for (std::size_t i = start; i < end; ++i) {
          const auto src = validation->conditions.row(i);
          std::copy(src.begin(), src.end(), cond.row(i - start).begin());
        }
        const std::span<const std::vector<int>> seqs(validation->sequences.data() + start,
                                                     end - start);
        total += nll_loss(model, seqs, cond) * double(end - start);
      }
      row.validation_loss = total / double(m);
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

} // namespace exprmol
