//
// SPDX-License-Identifier: Apache-2.0
//

#include "exprmol/sa_score.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <stdexcept>
#include <string>

#include "exprmol/canonical.h"
#include "exprmol/fingerprint.h"
#include "exprmol/rings.h"

namespace exprmol {

SaTables build_sa_tables(const std::vector<MolGraph> &corpus) {
  std::map<std::uint64_t, long> counts;
  for (const auto &g: corpus) {
    for (const auto &[id, n]: morgan_counts(g, 2))
      counts[id] += n;
  }
  SaTables t;
  if (counts.empty())
    return t;

  std::vector<long> sorted;
  long total = 0;
  for (const auto &[id, n]: counts) {
    sorted.push_back(n);
    total += n;
  }
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  long acc = 0;
  long n80 = sorted.back();
  for (long n: sorted) {
    acc += n;
    if (acc * 5 >= total * 4) {
      n80 = n;
      break;
    }
  }
  for (const auto &[id, n]: counts)
    t.fragment_score[id] = std::log10(double(n) / double(n80));
  return t;
}

void write_sa_tables(std::ostream &out, const SaTables &tables) {
  std::map<std::uint64_t, double> ordered(tables.fragment_score.begin(),
                                          tables.fragment_score.end());
  char buf[64];
  for (const auto &[id, s]: ordered) {
    auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), s);
    out << id << '\t' << std::string_view(buf, p - buf) << '\n';
  }
}

SaTables read_sa_tables(std::istream &in) {
  SaTables t;
  std::string line;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty())
      continue;
    const auto tab = line.find('\t');
    std::uint64_t id = 0;
    double s = 0.0;
    const char *end = line.data() + line.size();
    if (tab == std::string::npos
        || std::from_chars(line.data(), line.data() + tab, id).ptr != line.data() + tab
        || std::from_chars(line.data() + tab + 1, end, s).ptr != end) {
      throw std::runtime_error("malformed SA table row " + std::to_string(row));
    }
    t.fragment_score[id] = s;
  }
  return t;
}

int stereo_center_count(const MolGraph &g) {
  const auto ranks = refine_ranks(g, initial_ranks(g));
  int n = 0;
  for (int i = 0; i < g.atom_count(); ++i) {
    const Atom &a = g.atom(i);
    if (a.chirality != Chirality::kNone) {
      ++n;
      continue;
    }
    if (a.atomic_number != 6 || a.aromatic)
      continue;
    const int h = g.total_hydrogens(i);
    if (g.degree(i) + h != 4 || h > 1)
      continue;
    std::vector<int> classes;
    bool saturated = true;
    for (const auto &nb: g.neighbors(i)) {
      saturated = saturated && g.bond(nb.bond).order == BondOrder::kSingle;
      classes.push_back(ranks[nb.atom]);
    }
    if (!saturated)
      continue;
    if (h == 1)
      classes.push_back(-1);
    std::sort(classes.begin(), classes.end());
    if (std::adjacent_find(classes.begin(), classes.end()) == classes.end())
      ++n;
  }
  return n;
}

SaBreakdown sa_breakdown(const MolGraph &g, const SaTables &tables) {
  if (tables.empty())
    throw std::invalid_argument("sa_score: empty fragment table");
  SaBreakdown b;

  const auto counts = morgan_counts(g, 2);
  double sum = 0.0;
  long nf = 0;
  for (const auto &[id, n]: counts) {
    auto it = tables.fragment_score.find(id);
    sum += n * (it == tables.fragment_score.end() ? tables.missing_score : it->second);
    nf += n;
  }
  b.fragment = nf > 0 ? sum / double(nf) : 0.0;

  const double n_atoms = g.atom_count();
  const auto rings = sssr(g);
  b.size_penalty = std::pow(n_atoms, 1.005) - n_atoms;
  b.stereo_penalty = std::log10(stereo_center_count(g) + 1.0);
  b.spiro_penalty = std::log10(spiro_atom_count(g, rings) + 1.0);
  b.bridge_penalty = std::log10(bridgehead_atom_count(g, rings) + 1.0);
  const bool macrocycle =
      std::any_of(rings.begin(), rings.end(), [](const Ring &r) { return r.atoms.size() > 8; });
  b.macrocycle_penalty = macrocycle ? std::log10(2.0) : 0.0;
  // Symmetric molecules have fewer distinct fragments than atoms.
  if (!counts.empty() && n_atoms > double(counts.size()))
    b.symmetry_bonus = 0.5 * std::log(n_atoms / double(counts.size()));

  const double s = b.fragment - b.size_penalty - b.stereo_penalty - b.spiro_penalty
                   - b.bridge_penalty - b.macrocycle_penalty + b.symmetry_bonus;
  constexpr double kMin = -4.0;
  constexpr double kMax = 2.5;
  double raw = 11.0 - (s - kMin + 1.0) / (kMax - kMin) * 9.0;
  if (raw > 8.0)
    raw = 8.0 + std::log(raw + 1.0 - 9.0);
  b.raw = std::clamp(raw, 1.0, 10.0);
  return b;
}

double sa_score(const MolGraph &g, const SaTables &tables) {
  return (10.0 - sa_breakdown(g, tables).raw) / 9.0;
}

} // namespace exprmol
