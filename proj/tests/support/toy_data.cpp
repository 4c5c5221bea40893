//
// SPDX-License-Identifier: Apache-2.0
//

#include "support/toy_data.h"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "exprmol/random.h"

namespace exprmol::testing {
namespace {
  std::ifstream open(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in)
      throw std::runtime_error("cannot open " + path.string());
    return in;
  }
} // namespace

std::filesystem::path data_path(const std::string &name) {
  return std::filesystem::path(EXPRMOL_DATA_DIR) / name;
}

std::vector<std::string> read_smiles_file(const std::filesystem::path &path) {
  auto in = open(path);
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#')
      continue;
    std::istringstream fields(line);
    std::string smiles;
    fields >> smiles;
    if (!smiles.empty())
      out.push_back(smiles);
  }
  return out;
}

std::vector<InvalidCase> read_invalid_cases() {
  auto in = open(data_path("invalid.tsv"));
  std::vector<InvalidCase> out;
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] == '#')
      continue;
    if (header) {
      header = false;
      continue;
    }
    auto cells = split_line(line, '\t');
    if (cells.size() != 2)
      throw std::runtime_error("bad invalid.tsv row: " + line);
    out.push_back({ cells[0], cells[1] });
  }
  return out;
}

std::vector<ToyMolecule> read_toy_corpus() {
  auto in = open(data_path("toy_corpus.tsv"));
  std::vector<ToyMolecule> out;
  std::string line;
  std::getline(in, line); // header
  while (std::getline(in, line)) {
    if (line.empty())
      continue;
    auto cells = split_line(line, '\t');
    out.push_back({ cells.at(0), cells.at(1) });
  }
  return out;
}

ProfileSet synthetic_profiles(std::size_t clusters, std::size_t per_cluster,
                              std::size_t genes, double noise, std::uint64_t seed) {
  ProfileSet set;
  for (std::size_t g = 0; g < genes; ++g) {
    char id[32];
    std::snprintf(id, sizeof(id), "G%04zu", g + 1);
    set.gene_ids.emplace_back(id);
  }
  std::vector<std::vector<double>> centers(clusters, std::vector<double>(genes));
  for (std::size_t c = 0; c < clusters; ++c) {
    Rng rng(derive_seed(seed, Stream::kSynthetic, c));
    for (auto &v: centers[c])
      v = rng.normal();
  }
  Rng rng(derive_seed(seed, Stream::kSynthetic, clusters));
  for (std::size_t i = 0; i < per_cluster; ++i) {
    for (std::size_t c = 0; c < clusters; ++c) {
      Profile p;
      p.sample_id = "c" + std::to_string(c) + "_" + std::to_string(i);
      p.values = centers[c];
      for (auto &v: p.values)
        v += noise * rng.normal();
      set.profiles.push_back(std::move(p));
    }
  }
  return set;
}

Tensor random_tensor(std::size_t rows, std::size_t cols, std::uint64_t seed, double scale) {
  Rng rng(seed);
  Tensor t = Tensor::matrix(rows, cols);
  for (auto &v: t.values())
    v = scale * (2.0 * rng.uniform() - 1.0);
  return t;
}

} // namespace exprmol::testing
