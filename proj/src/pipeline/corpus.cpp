//
// SPDX-License-Identifier: Apache-2.0
//

#include "exprmol/corpus.h"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>

#include "exprmol/smiles.h"

namespace exprmol {
namespace {
  bool next_line(std::istream &in, std::string &line) {
    if (!std::getline(in, line))
      return false;
    if (!line.empty() && line.back() == '\r')
      line.pop_back();
    return true;
  }

  std::string at_row(std::size_t row) { return " at row " + std::to_string(row); }
} // namespace

PairedCorpus load_pairs(std::istream &in, const ProfileSet *profiles,
                        std::size_t max_length) {
  PairedCorpus corpus;
  std::string line;
  std::size_t row = 0;
  while (next_line(in, line)) {
    ++row;
    if (line.empty())
      continue;
    auto cells = split_line(line, '\t');
    if (cells.size() != 2) {
      throw IngestError("pairs rows need 2 tab-separated cells, got "
                            + std::to_string(cells.size()) + at_row(row),
                        row, std::min<std::size_t>(cells.size(), 2) + 1);
    }
    if (row == 1 && cells[0] == "sample_id" && cells[1] == "smiles")
      continue;
    if (profiles && !profiles->find(cells[0])) {
      throw IngestError("unknown sample_id \"" + cells[0] + "\"" + at_row(row), row, 1);
    }
    if (cells[1].size() > max_length) {
      throw IngestError("SMILES longer than " + std::to_string(max_length) + " characters"
                            + at_row(row),
                        row, 2);
    }
    auto parsed = parse_smiles(cells[1]);
    if (!parsed.ok()) {
      throw IngestError("invalid SMILES \"" + cells[1] + "\" ("
                            + std::string(error_kind_name(parsed.error->kind)) + ": "
                            + parsed.error->message + ")" + at_row(row),
                        row, 2);
    }
    corpus.sample_ids.push_back(std::move(cells[0]));
    corpus.smiles.push_back(std::move(cells[1]));
  }
  return corpus;
}

PairedCorpus load_pairs(const std::filesystem::path &path, const ProfileSet *profiles,
                        std::size_t max_length) {
  std::ifstream in(path);
  if (!in)
    throw std::runtime_error("cannot open pairs file " + path.string());
  return load_pairs(in, profiles, max_length);
}

Split split_indices(std::size_t n, double train_fraction, double validation_fraction,
                    Rng &rng) {
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i)
    order[i] = i;
  rng.shuffle(order);
  std::size_t ntrain = static_cast<std::size_t>(static_cast<double>(n) * train_fraction);
  std::size_t nval = static_cast<std::size_t>(static_cast<double>(n) * validation_fraction);
  ntrain = std::max<std::size_t>(std::min(ntrain, n), n > 0 ? 1 : 0);
  nval = std::min(nval, n - ntrain);

  Split s;
  s.train.assign(order.begin(), order.begin() + ntrain);
  s.validation.assign(order.begin() + ntrain, order.begin() + ntrain + nval);
  s.test.assign(order.begin() + ntrain + nval, order.end());
  std::sort(s.train.begin(), s.train.end());
  std::sort(s.validation.begin(), s.validation.end());
  std::sort(s.test.begin(), s.test.end());
  return s;
}

void write_generated(std::ostream &out, const GeneratedBatch &batch) {
  out << "index\tsmiles\tvalid\tcanonical\n";
  for (const auto &m: batch.molecules) {
    out << m.index << '\t' << m.smiles << '\t' << (m.valid ? 1 : 0) << '\t' << m.canonical
        << '\n';
  }
}

std::vector<GeneratedMolecule> read_generated(std::istream &in) {
  std::vector<GeneratedMolecule> out;
  std::string line;
  std::size_t row = 0;
  while (next_line(in, line)) {
    ++row;
    if (line.empty())
      continue;
    auto cells = split_line(line, '\t');
    if (row == 1 && !cells.empty() && cells[0] == "index")
      continue;
    if (cells.size() != 4) {
      throw IngestError("generated rows need 4 tab-separated cells" + at_row(row), row,
                        std::min<std::size_t>(cells.size(), 4) + 1);
    }
    GeneratedMolecule m;
    try {
      std::size_t used = 0;
      m.index = std::stoul(cells[0], &used);
      if (used != cells[0].size())
        throw std::invalid_argument(cells[0]);
    } catch (const std::exception &) {
      throw IngestError("bad index \"" + cells[0] + "\"" + at_row(row), row, 1);
    }
    m.smiles = cells[1];
    if (cells[2] != "0" && cells[2] != "1")
      throw IngestError("valid must be 0 or 1" + at_row(row), row, 3);
    m.valid = cells[2] == "1";
    m.canonical = cells[3];
    out.push_back(std::move(m));
  }
  return out;
}

} // namespace exprmol
