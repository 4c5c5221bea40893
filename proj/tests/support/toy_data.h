//
// SPDX-License-Identifier: Apache-2.0
//

#ifndef EXPRMOL_TESTS_TOY_DATA_H_
#define EXPRMOL_TESTS_TOY_DATA_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "exprmol/profile.h"
#include "exprmol/tensor.h"

namespace exprmol::testing {

std::filesystem::path data_path(const std::string &name);

// Non-empty, non-comment lines; the first whitespace-separated field.
std::vector<std::string> read_smiles_file(const std::filesystem::path &path);

struct InvalidCase {
  std::string smiles;
  std::string kind;
};
std::vector<InvalidCase> read_invalid_cases();

struct ToyMolecule {
  std::string cluster; // "A" or "B"
  std::string smiles;
};
std::vector<ToyMolecule> read_toy_corpus();

// `per_cluster` profiles around each of `clusters` centers. Centers have
// unit-normal entries; members add N(0, noise^2). Sample ids are
// "c<cluster>_<i>", gene ids "G0001".., rows interleave the clusters.
ProfileSet synthetic_profiles(std::size_t clusters, std::size_t per_cluster,
                              std::size_t genes, double noise, std::uint64_t seed);

// Uniform(-scale, scale) entries.
Tensor random_tensor(std::size_t rows, std::size_t cols, std::uint64_t seed,
                     double scale = 1.0);

} // namespace exprmol::testing

#endif // EXPRMOL_TESTS_TOY_DATA_H_
