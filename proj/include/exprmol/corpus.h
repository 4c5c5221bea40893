//
// SPDX-License-Identifier: Apache-2.0
//

#ifndef EXPRMOL_CORPUS_H_
#define EXPRMOL_CORPUS_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "exprmol/generator.h"
#include "exprmol/profile.h"

namespace exprmol {

/// (sample_id, SMILES) rows. Each SMILES parsed when the corpus was loaded.
struct PairedCorpus {
  std::vector<std::string> sample_ids;
  std::vector<std::string> smiles;

  std::size_t size() const { return smiles.size(); }
};

// "sample_id<TAB>smiles" rows; an optional header with exactly those names
// is skipped, as are blank lines. When `profiles` is given every sample_id
// must be present in it. Throws IngestError naming the row on an unknown
// sample_id, an unparsable SMILES or one longer than max_length characters.
PairedCorpus load_pairs(std::istream &in, const ProfileSet *profiles,
                        std::size_t max_length);
PairedCorpus load_pairs(const std::filesystem::path &path, const ProfileSet *profiles,
                        std::size_t max_length);

struct Split {
  std::vector<std::size_t> train;
  std::vector<std::size_t> validation;
  std::vector<std::size_t> test;
};

// Shuffles 0..n-1 with `rng` and cuts it into floor(n * train_fraction),
// floor(n * validation_fraction) and the rest. The training part always
// keeps at least one row. Each part is returned sorted.
Split split_indices(std::size_t n, double train_fraction, double validation_fraction,
                    Rng &rng);

// "index<TAB>smiles<TAB>valid<TAB>canonical" with a header row.
void write_generated(std::ostream &out, const GeneratedBatch &batch);
std::vector<GeneratedMolecule> read_generated(std::istream &in);

} // namespace exprmol

#endif // EXPRMOL_CORPUS_H_
