//
// SPDX-License-Identifier: Apache-2.0
//

#ifndef EXPRMOL_SUBSTRUCTURE_H_
#define EXPRMOL_SUBSTRUCTURE_H_

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "exprmol/mol_graph.h"

namespace exprmol {

/// Per-molecule facts that patterns query: ring membership, ring counts,
/// valences. Built once per molecule.
class MatchContext {
public:
  explicit MatchContext(const MolGraph &g);

  const MolGraph &graph() const { return g_; }
  int hydrogens(int atom) const { return g_.total_hydrogens(atom); }
  // Total connections including hydrogens.
  int connectivity(int atom) const { return g_.degree(atom) + g_.atom(atom).hydrogens; }
  int valence(int atom) const { return valence_[atom]; }
  int ring_count(int atom) const { return ring_count_[atom]; }
  // 0 when the atom is in no ring.
  int smallest_ring(int atom) const { return smallest_ring_[atom]; }
  bool ring_bond(int bond) const { return ring_bond_[bond]; }

private:
  const MolGraph &g_;
  std::vector<int> valence_;
  std::vector<int> ring_count_;
  std::vector<int> smallest_ring_;
  std::vector<bool> ring_bond_;
};

class PatternError: public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Compiled substructure query in a SMARTS subset: bracket primitives
/// # A a * H X D v R r + - isotope and $(...), operators ! & , ;, bonds
/// - = # : ~ @ with the same operators, branches, ring closures and '.'.
class Pattern {
public:
  Pattern();
  ~Pattern();
  Pattern(Pattern &&) noexcept;
  Pattern &operator=(Pattern &&) noexcept;

  // Throws PatternError.
  static Pattern parse(std::string_view smarts);

  const std::string &source() const;
  int atom_count() const;

  bool matches(const MatchContext &ctx) const;
  // Some match maps pattern atom 0 onto `atom`.
  bool matches_at(const MatchContext &ctx, int atom) const;
  // Matches that differ in their set of target atoms.
  int count_unique_matches(const MatchContext &ctx) const;

  struct Impl;

private:
  std::unique_ptr<Impl> impl_;
};

} // namespace exprmol

#endif // EXPRMOL_SUBSTRUCTURE_H_
