//
// SPDX-License-Identifier: Apache-2.0
//

#ifndef EXPRMOL_DESCRIPTORS_H_
#define EXPRMOL_DESCRIPTORS_H_

#include <string>
#include <string_view>
#include <vector>

#include "exprmol/mol_graph.h"

namespace exprmol {

/// The eight drug-likeness descriptors, in QED order.
struct Descriptors {
  double mw = 0.0;
  double alogp = 0.0;
  int hba = 0;
  int hbd = 0;
  double psa = 0.0;
  int rotb = 0;
  int arom = 0;
  int alerts = 0;
};

Descriptors compute_descriptors(const MolGraph &g);

// Average atomic masses, implicit hydrogens included.
double molecular_weight(const MolGraph &g);

// Wildman-Crippen atom typing. Contributions are per graph atom, each
// including the hydrogens attached to it.
struct CrippenAtom {
  std::string type;
  double logp;
};
std::vector<CrippenAtom> crippen_contributions(const MolGraph &g);
double crippen_logp(const MolGraph &g);

// Ertl topological polar surface area (N and O only).
std::vector<double> tpsa_contributions(const MolGraph &g);
double tpsa(const MolGraph &g);

// N or O atoms bearing at least one hydrogen.
int hydrogen_bond_donors(const MolGraph &g);
// N and O atoms.
int hydrogen_bond_acceptors(const MolGraph &g);
// Single, non-ring bonds between heavy atoms of heavy degree >= 2, amide
// C-N bonds excluded.
int rotatable_bonds(const MolGraph &g);
// SSSR rings made only of aromatic atoms.
int aromatic_ring_count(const MolGraph &g);
// Number of bundled alert patterns with at least one match.
int structural_alert_count(const MolGraph &g);
const std::vector<std::string_view> &structural_alert_patterns();

// Hydrogen counts turned into graph atoms.
MolGraph with_explicit_hydrogens(const MolGraph &g);

} // namespace exprmol

#endif // EXPRMOL_DESCRIPTORS_H_
