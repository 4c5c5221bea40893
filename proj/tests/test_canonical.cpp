//
// SPDX-License-Identifier: Apache-2.0
//

#include "exprmol/canonical.h"

#include <numeric>
#include <set>

#include <gtest/gtest.h>

#include "exprmol/smiles.h"
#include "support/toy_data.h"

namespace exprmol {
namespace {

std::vector<int> random_order(int n, Rng &rng) {
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  rng.shuffle(order);
  return order;
}

TEST(CanonicalTest, Examples) {
  EXPECT_EQ(canonicalize("OCC"), canonicalize("CCO"));
  const std::string c = canonicalize("C1=CC=CC=C1C(=O)N");
  EXPECT_EQ(canonicalize(c), c);
  EXPECT_NE(canonicalize("CCO"), canonicalize("COC"));
  EXPECT_NE(canonicalize("c1ccccc1O"), canonicalize("C1CCCCC1O"));
  EXPECT_THROW(canonicalize("C1CC"), SmilesException);
}

TEST(CanonicalTest, RanksAreAPermutation) {
  const MolGraph g = parse_smiles_or_throw("CC(C)(C)c1ccc(O)cc1");
  const CanonicalForm f = canonical_form(g);
  std::vector<int> sorted = f.ranks;
  std::sort(sorted.begin(), sorted.end());
  for (int i = 0; i < g.atom_count(); ++i)
    EXPECT_EQ(sorted[i], i);
}

TEST(CanonicalTest, RefinementSeparatesSymmetryClasses) {
  // Neopentane: one central carbon and four equivalent methyls.
  const MolGraph g = parse_smiles_or_throw("CC(C)(C)C");
  const auto r = refine_ranks(g, initial_ranks(g));
  const std::set<int> classes(r.begin(), r.end());
  EXPECT_EQ(classes.size(), 2u);
  EXPECT_EQ(r[0], r[2]);
  EXPECT_NE(r[0], r[1]);
}

TEST(CanonicalTest, PermutationInvariance) {
  const std::vector<std::string> molecules = {
    "CC(=O)Oc1ccccc1C(=O)O", "CN1CCC[C@H]1c1cccnc1", "O=C(O)Cc1ccccc1Nc1c(Cl)cccc1Cl",
    "C1CC2CCC1CC2", "c1ccc2ccccc2c1", "CC(C)(C)C", "C1CCCCC1.c1ccccc1",
  };
  Rng rng(23);
  for (const auto &s: molecules) {
    const MolGraph g = parse_smiles_or_throw(s);
    const std::string want = canonical_smiles(g);
    for (int k = 0; k < 100; ++k) {
      const MolGraph p = g.permuted(random_order(g.atom_count(), rng));
      ASSERT_EQ(canonical_smiles(p), want) << s;
    }
  }
}

TEST(CanonicalTest, RandomSmilesDescribeTheSameMolecule) {
  Rng rng(5);
  const auto corpus = testing::read_smiles_file(testing::data_path("drug_like.smi"));
  for (std::size_t i = 0; i < corpus.size(); i += 20) {
    const MolGraph g = parse_smiles_or_throw(corpus[i]);
    const std::string want = canonical_smiles(g);
    for (int k = 0; k < 5; ++k) {
      const std::string r = random_smiles(g, rng);
      EXPECT_EQ(canonicalize(r), want) << corpus[i] << " vs " << r;
    }
  }
}

TEST(CanonicalTest, ChiralityDoesNotChangeRanking) {
  const auto a = canonical_form(parse_smiles_or_throw("N[C@@H](C)C(=O)O")).ranks;
  const auto b = canonical_form(parse_smiles_or_throw("N[C@H](C)C(=O)O")).ranks;
  EXPECT_EQ(a, b);
}

} // namespace
} // namespace exprmol
