//
// SPDX-License-Identifier: Apache-2.0
//

#include "exprmol/checkpoint.h"

#include <bit>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

#include <json.hpp>

#include "exprmol/config.h"

namespace exprmol {
namespace {
  using nlohmann::json;

  constexpr char kMagic[8] = { 'E', 'X', 'M', 'L', 'C', 'K', 'P', 'T' };

  std::uint64_t to_le(std::uint64_t v) {
    if constexpr (std::endian::native == std::endian::big) {
      std::uint64_t r = 0;
      for (int i = 0; i < 8; ++i)
        r |= ((v >> (8 * i)) & 0xff) << (8 * (7 - i));
      return r;
    }
    return v;
  }

  void write_u64(std::ostream &out, std::uint64_t v) {
    v = to_le(v);
    char buf[8];
    std::memcpy(buf, &v, 8);
    out.write(buf, 8);
  }

  std::uint64_t read_u64(std::istream &in) {
    char buf[8];
    if (!in.read(buf, 8))
      throw CheckpointError("checkpoint truncated");
    std::uint64_t v = 0;
    std::memcpy(&v, buf, 8);
    return to_le(v);
  }

  void write_checkpoint(std::ostream &out, json header, const ParameterSet &params) {
    json manifest = json::array();
    std::uint64_t offset = 0;
    for (const auto &p: params) {
      manifest.push_back(
          { { "name", p.name }, { "shape", p.value.shape() }, { "offset", offset } });
      offset += 8 * p.value.size();
    }
    header["format_version"] = kCheckpointVersion;
    header["tensors"] = std::move(manifest);
    header["payload_bytes"] = offset;
    const std::string text = header.dump();
    out.write(kMagic, sizeof(kMagic));
    write_u64(out, text.size());
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    for (const auto &p: params) {
      for (double v: p.value.values())
        write_u64(out, std::bit_cast<std::uint64_t>(v));
    }
    if (!out)
      throw CheckpointError("failed to write checkpoint");
  }

  struct RawCheckpoint {
    json header;
    ParameterSet params;
  };

  RawCheckpoint read_checkpoint(std::istream &in, std::string_view kind) {
    char magic[8];
    if (!in.read(magic, 8) || std::memcmp(magic, kMagic, 8) != 0)
      throw CheckpointError("not a checkpoint file (bad magic)");
    const std::uint64_t len = read_u64(in);
    if (len > (std::uint64_t { 1 } << 32))
      throw CheckpointError("checkpoint header too large");
    std::string text(len, '\0');
    if (!in.read(text.data(), static_cast<std::streamsize>(len)))
      throw CheckpointError("checkpoint header truncated");
    RawCheckpoint raw;
    try {
      raw.header = json::parse(text);
    } catch (const json::exception &e) {
      throw CheckpointError(std::string("malformed checkpoint header: ") + e.what());
    }
    const json &h = raw.header;
    if (!h.contains("format_version") || h["format_version"] != kCheckpointVersion) {
      throw CheckpointError("unsupported checkpoint version "
                            + (h.contains("format_version") ? h["format_version"].dump()
                                                            : std::string("(missing)")));
    }
    if (h.value("kind", "") != kind)
      throw CheckpointError("expected a " + std::string(kind) + " checkpoint, got \""
                            + h.value("kind", "") + "\"");

    const std::uint64_t payload = h.at("payload_bytes").get<std::uint64_t>();
    std::vector<char> bytes(payload);
    if (payload > 0 && !in.read(bytes.data(), static_cast<std::streamsize>(payload)))
      throw CheckpointError("checkpoint payload truncated");
    if (in.peek() != std::char_traits<char>::eof())
      throw CheckpointError("trailing bytes after checkpoint payload");

    std::uint64_t expected = 0;
    for (const auto &t: h.at("tensors")) {
      const auto shape = t.at("shape").get<std::vector<std::size_t>>();
      const auto offset = t.at("offset").get<std::uint64_t>();
      std::size_t count = 1;
      for (auto s: shape)
        count *= s;
      if (offset != expected || offset + 8 * count > payload)
        throw CheckpointError("tensor " + t.at("name").get<std::string>()
                              + " has an invalid offset");
      std::vector<double> data(count);
      for (std::size_t i = 0; i < count; ++i) {
        std::uint64_t v = 0;
        std::memcpy(&v, bytes.data() + offset + 8 * i, 8);
        data[i] = std::bit_cast<double>(to_le(v));
      }
      raw.params.add(t.at("name").get<std::string>(), Tensor(shape, std::move(data)));
      expected = offset + 8 * count;
    }
    if (expected != payload)
      throw CheckpointError("checkpoint payload size does not match the manifest");
    return raw;
  }

  template <class F>
  auto guarded(F &&f) {
    try {
      return f();
    } catch (const CheckpointError &) {
      throw;
    } catch (const std::exception &e) {
      throw CheckpointError(std::string("invalid checkpoint: ") + e.what());
    }
  }
} // namespace

void write_vae_checkpoint(std::ostream &out, const FeatureExtractor &fx) {
  json h;
  h["kind"] = "vae";
  h["config"] = vae_config_to_json(fx.model.config());
  h["input_dim"] = fx.model.input_dim();
  h["gene_ids"] = fx.gene_ids;
  if (fx.stats) {
    std::vector<int> degenerate(fx.stats->degenerate.begin(), fx.stats->degenerate.end());
    h["normalization"] = { { "mean", fx.stats->mean },
                           { "stddev", fx.stats->stddev },
                           { "degenerate", degenerate } };
  } else {
    h["normalization"] = nullptr;
  }
  write_checkpoint(out, std::move(h), fx.model.params());
}

FeatureExtractor read_vae_checkpoint(std::istream &in) {
  RawCheckpoint raw = read_checkpoint(in, "vae");
  return guarded([&] {
    const json &h = raw.header;
    FeatureExtractor fx;
    fx.gene_ids = h.at("gene_ids").get<std::vector<std::string>>();
    const auto input_dim = h.at("input_dim").get<std::size_t>();
    if (fx.gene_ids.size() != input_dim)
      throw CheckpointError("gene id count does not match the input dimension");
    if (!h.at("normalization").is_null()) {
      const json &n = h["normalization"];
      NormalizationStats s;
      s.mean = n.at("mean").get<std::vector<double>>();
      s.stddev = n.at("stddev").get<std::vector<double>>();
      for (int d: n.at("degenerate").get<std::vector<int>>())
        s.degenerate.push_back(d != 0);
      if (s.mean.size() != input_dim || s.stddev.size() != input_dim
          || s.degenerate.size() != input_dim)
        throw CheckpointError("normalization stats do not match the input dimension");
      fx.stats = std::move(s);
    }
    fx.model = VaeModel(vae_config_from_json(h.at("config")), input_dim, std::move(raw.params));
    return fx;
  });
}

void write_generator_checkpoint(std::ostream &out, const GenModel &model) {
  json h;
  h["kind"] = "generator";
  h["config"] = gen_config_to_json(model.config());
  h["condition_dim"] = model.condition_dim();
  h["vocabulary"] = model.vocab().tokens();
  write_checkpoint(out, std::move(h), model.params());
}

GenModel read_generator_checkpoint(std::istream &in) {
  RawCheckpoint raw = read_checkpoint(in, "generator");
  return guarded([&] {
    const json &h = raw.header;
    return GenModel(gen_config_from_json(h.at("config")),
                    Vocabulary::from_tokens(h.at("vocabulary").get<std::vector<std::string>>()),
                    h.at("condition_dim").get<std::size_t>(), std::move(raw.params));
  });
}

void save_vae_checkpoint(const std::filesystem::path &path, const FeatureExtractor &fx) {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw CheckpointError("cannot write " + path.string());
  write_vae_checkpoint(out, fx);
}

FeatureExtractor load_vae_checkpoint(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw CheckpointError("cannot open checkpoint " + path.string());
  return read_vae_checkpoint(in);
}

void save_generator_checkpoint(const std::filesystem::path &path, const GenModel &model) {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw CheckpointError("cannot write " + path.string());
  write_generator_checkpoint(out, model);
}

GenModel load_generator_checkpoint(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw CheckpointError("cannot open checkpoint " + path.string());
  return read_generator_checkpoint(in);
}

} // namespace exprmol
