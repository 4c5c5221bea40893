//
// SPDX-License-Identifier: Apache-2.0
//

#ifndef EXPRMOL_METRICS_H_
#define EXPRMOL_METRICS_H_

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "exprmol/fingerprint.h"
#include "exprmol/mol_graph.h"
#include "exprmol/sa_score.h"

namespace exprmol {

struct MoleculeReport {
  std::string smiles;
  bool valid = false;
  std::string canonical;   // empty when invalid
  std::string error;       // error kind name when invalid
  std::optional<double> qed;
  std::optional<double> sa;
  std::optional<double> max_tanimoto;
};

struct Candidate {
  std::size_t index = 0; // into the molecules passed to select_candidate
  std::string canonical;
  double score = 0.0;
};

struct MetricsReport {
  std::size_t generated = 0;
  std::size_t valid = 0;
  std::size_t unique = 0;
  std::size_t novel = 0;
  // Absent when the denominator is zero.
  std::optional<double> validity;
  std::optional<double> uniqueness;
  std::optional<double> novelty;
  std::optional<double> mean_qed;
  std::optional<double> mean_sa;
  std::vector<MoleculeReport> molecules;
  std::optional<Candidate> candidate;
};

// validity = valid / generated, uniqueness = distinct canonical / valid,
// novelty = valid molecules whose canonical form is not in the training set
// / valid. Training strings that fail to parse are ignored.
MetricsReport corpus_stats(const std::vector<std::string> &generated,
                           const std::vector<std::string> &training);

struct EvaluateOptions {
  const SaTables *sa_tables = nullptr; // skip SA when null
  const std::vector<MolGraph> *ligands = nullptr; // skip similarity when null
  int fingerprint_radius = 2;
  int fingerprint_bits = 2048;
  // Worker threads for the per-molecule scores; the result does not depend
  // on it.
  int threads = 1;
};

// corpus_stats plus per-molecule QED, SA, max Tanimoto and the candidate.
MetricsReport evaluate_corpus(const std::vector<std::string> &generated,
                              const std::vector<std::string> &training,
                              const EvaluateOptions &options);

// Per molecule, the max Tanimoto over the ligands; returns the argmax, ties
// broken by the lexicographically smallest canonical SMILES. Throws
// std::invalid_argument when either list is empty.
Candidate select_candidate(const std::vector<MolGraph> &molecules,
                           const std::vector<MolGraph> &ligands, int radius = 2,
                           int nbits = 2048);
Candidate select_candidate(const std::vector<Fingerprint> &molecules,
                           const std::vector<std::string> &canonical,
                           const std::vector<Fingerprint> &ligands);

// "key\tvalue" summary lines, a blank line, then a TSV table with columns
// smiles, valid, canonical, error, qed, sa, max_tanimoto.
void write_report(std::ostream &out, const MetricsReport &report);

// One SMILES per line; blank lines and '#' comments skipped. Throws
// std::runtime_error naming the line on an invalid SMILES.
std::vector<MolGraph> read_ligands(std::istream &in);

} // namespace exprmol

#endif // EXPRMOL_METRICS_H_
