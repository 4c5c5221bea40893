//
// SPDX-License-Identifier: Apache-2.0
//

#ifndef EXPRMOL_RINGS_H_
#define EXPRMOL_RINGS_H_

#include <vector>

#include "exprmol/mol_graph.h"

namespace exprmol {

// Per-bond flag: the bond lies on a cycle (is not a bridge).
std::vector<bool> ring_bond_flags(const MolGraph &g);
// Per-atom flag: the atom has at least one ring bond.
std::vector<bool> ring_atom_flags(const MolGraph &g);

struct Ring {
  std::vector<int> atoms; // in cyclic order
  std::vector<int> bonds; // bonds[i] joins atoms[i] and atoms[i + 1]
};

// Smallest set of smallest rings: a minimum cycle basis built from Horton
// candidate cycles and GF(2) elimination.
std::vector<Ring> sssr(const MolGraph &g);

// Atoms shared by two rings whose intersection is exactly that atom.
int spiro_atom_count(const MolGraph &g, const std::vector<Ring> &rings);
// End atoms of paths shared by two rings that have at least two bonds in
// common.
int bridgehead_atom_count(const MolGraph &g, const std::vector<Ring> &rings);

} // namespace exprmol

#endif // EXPRMOL_RINGS_H_
