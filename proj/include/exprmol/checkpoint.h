//
// SPDX-License-Identifier: Apache-2.0
//

#ifndef EXPRMOL_CHECKPOINT_H_
#define EXPRMOL_CHECKPOINT_H_

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>

#include "exprmol/generator.h"
#include "exprmol/vae.h"

namespace exprmol {

inline constexpr int kCheckpointVersion = 1;

class CheckpointError: public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Layout: 8-byte magic "EXMLCKPT", uint64 little-endian header length, JSON
// header, then the tensors as little-endian float64 in manifest order. The
// header holds format_version, kind ("vae" or "generator"), the config, and a
// tensor manifest of (name, shape, offset) with offsets relative to the
// start of the payload.
void write_vae_checkpoint(std::ostream &out, const FeatureExtractor &fx);
FeatureExtractor read_vae_checkpoint(std::istream &in);
void write_generator_checkpoint(std::ostream &out, const GenModel &model);
GenModel read_generator_checkpoint(std::istream &in);

void save_vae_checkpoint(const std::filesystem::path &path, const FeatureExtractor &fx);
FeatureExtractor load_vae_checkpoint(const std::filesystem::path &path);
void save_generator_checkpoint(const std::filesystem::path &path, const GenModel &model);
GenModel load_generator_checkpoint(const std::filesystem::path &path);

} // namespace exprmol

#endif // EXPRMOL_CHECKPOINT_H_
