//
// SPDX-License-Identifier: Apache-2.0
//

#ifndef EXPRMOL_SA_SCORE_H_
#define EXPRMOL_SA_SCORE_H_

#include <cstdint>
#include <iosfwd>
#include <unordered_map>
#include <vector>

#include "exprmol/mol_graph.h"

namespace exprmol {

/// Fragment contributions keyed by radius-2 Morgan environment id.
struct SaTables {
  std::unordered_map<std::uint64_t, double> fragment_score;
  // Contribution of a fragment absent from the table.
  double missing_score = -4.0;

  bool empty() const { return fragment_score.empty(); }
};

// score(f) = log10(count(f) / n80), where n80 is the count of the fragment
// at which the descending cumulative count first reaches 80% of all
// occurrences.
SaTables build_sa_tables(const std::vector<MolGraph> &corpus);

void write_sa_tables(std::ostream &out, const SaTables &tables);
SaTables read_sa_tables(std::istream &in);

struct SaBreakdown {
  double fragment = 0.0;
  double size_penalty = 0.0;
  double stereo_penalty = 0.0;
  double spiro_penalty = 0.0;
  double bridge_penalty = 0.0;
  double macrocycle_penalty = 0.0;
  double symmetry_bonus = 0.0;
  double raw = 0.0; // 1 (easy) .. 10 (hard)
};

SaBreakdown sa_breakdown(const MolGraph &g, const SaTables &tables);
// (10 - raw) / 9, so 1 is easiest. Throws std::invalid_argument on an empty
// table.
double sa_score(const MolGraph &g, const SaTables &tables);

// Marked stereocenters plus unmarked sp3 atoms with four distinct
// substituents.
int stereo_center_count(const MolGraph &g);

} // namespace exprmol

#endif // EXPRMOL_SA_SCORE_H_
