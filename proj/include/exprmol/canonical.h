//
// SPDX-License-Identifier: Apache-2.0
//

#ifndef EXPRMOL_CANONICAL_H_
#define EXPRMOL_CANONICAL_H_

#include <string>
#include <string_view>
#include <vector>

#include "exprmol/mol_graph.h"
#include "exprmol/random.h"

namespace exprmol {

// Morgan-style refinement of atom classes from (element, charge, degree,
// hydrogens, aromaticity, isotope) and neighbor classes with bond orders.
// Returns dense ranks; tied atoms share a rank.
std::vector<int> refine_ranks(const MolGraph &g, std::vector<int> ranks);
std::vector<int> initial_ranks(const MolGraph &g);

struct CanonicalForm {
  std::string smiles;
  std::vector<int> ranks; // all distinct
};

// Ties left after refinement are broken by trying each member of the
// lowest tied class and keeping the lexicographically smallest string.
// After `leaf_budget` complete orderings only the first member of each class
// is tried.
CanonicalForm canonical_form(const MolGraph &g, int leaf_budget = 2048);
std::string canonical_smiles(const MolGraph &g);
// Parse then canonicalize. Throws SmilesException on invalid input.
std::string canonicalize(std::string_view smiles);

// Same molecule written from a random atom order.
std::string random_smiles(const MolGraph &g, Rng &rng);

} // namespace exprmol

#endif // EXPRMOL_CANONICAL_H_
