//
// SPDX-License-Identifier: Apache-2.0
//

#ifndef EXPRMOL_MOL_GRAPH_H_
#define EXPRMOL_MOL_GRAPH_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace exprmol {

enum class BondOrder : std::uint8_t {
  kSingle = 1,
  kDouble = 2,
  kTriple = 3,
  kAromatic = 4,
};

// Directional single-bond marks ('/' and '\'), stored relative to the
// bond's begin -> end direction.
enum class BondDirection : std::uint8_t {
  kNone,
  kUp,   // '/'
  kDown, // '\'
};

enum class Chirality : std::uint8_t {
  kNone,
  kCounterClockwise, // @
  kClockwise,        // @@
};

struct Atom {
  int atomic_number = 6;
  bool aromatic = false;
  int charge = 0;
  // Total attached hydrogens that are not graph atoms (implicit or given in
  // brackets).
  int hydrogens = 0;
  int isotope = 0;
  Chirality chirality = Chirality::kNone;
  // Written in brackets in the source string. Informational only; it does
  // not take part in comparisons.
  bool bracketed = false;
};

struct Bond {
  int begin = 0;
  int end = 0;
  BondOrder order = BondOrder::kSingle;
  BondDirection direction = BondDirection::kNone;

  int other(int atom) const { return atom == begin ? end : begin; }
};

struct Neighbor {
  int atom;
  int bond;
};

/// Undirected molecular graph. Hydrogens are normally implicit (carried as
/// counts on heavy atoms); bracketed [H] atoms become graph atoms.
class MolGraph {
public:
  int add_atom(const Atom &atom);
  // Throws std::invalid_argument on self bonds and duplicate bonds.
  int add_bond(int a, int b, BondOrder order,
               BondDirection direction = BondDirection::kNone);

  int atom_count() const { return static_cast<int>(atoms_.size()); }
  int bond_count() const { return static_cast<int>(bonds_.size()); }
  bool empty() const { return atoms_.empty(); }

  const Atom &atom(int i) const { return atoms_[i]; }
  Atom &atom(int i) { return atoms_[i]; }
  const Bond &bond(int i) const { return bonds_[i]; }
  Bond &bond(int i) { return bonds_[i]; }
  const std::vector<Atom> &atoms() const { return atoms_; }
  const std::vector<Bond> &bonds() const { return bonds_; }

  std::span<const Neighbor> neighbors(int i) const { return adj_[i]; }
  int degree(int i) const { return static_cast<int>(adj_[i].size()); }
  std::optional<int> bond_between(int a, int b) const;

  // Neighbors that are not hydrogen atoms.
  int heavy_degree(int i) const;
  // Hydrogens as counts plus explicit [H] neighbors.
  int total_hydrogens(int i) const;
  // Sum of bond orders, aromatic bonds counting 1.
  int bond_order_sum(int i) const;
  int heavy_atom_count() const;

  // Connected components as lists of atom indices in ascending order.
  std::vector<std::vector<int>> components() const;

  // Graph with atom i of this graph placed at position order[i].
  MolGraph permuted(std::span<const int> order) const;

private:
  std::vector<Atom> atoms_;
  std::vector<Bond> bonds_;
  std::vector<std::vector<Neighbor>> adj_;
};

int bond_order_value(BondOrder order);

} // namespace exprmol

#endif // EXPRMOL_MOL_GRAPH_H_
