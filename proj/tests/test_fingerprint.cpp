//
// SPDX-License-Identifier: Apache-2.0
//

#include "exprmol/fingerprint.h"

#include <numeric>
#include <set>

#include <gtest/gtest.h>

#include "exprmol/random.h"
#include "exprmol/smiles.h"

namespace exprmol {
namespace {

std::vector<int> sorted_counts(const std::string &smiles) {
  std::vector<int> out;
  for (const auto &[id, n]: morgan_counts(parse_smiles_or_throw(smiles), 2))
    out.push_back(n);
  std::sort(out.begin(), out.end());
  return out;
}

TEST(FingerprintTest, BitOperations) {
  Fingerprint f(130);
  f.set(0);
  f.set(64);
  f.set(129);
  EXPECT_EQ(f.count(), 3);
  EXPECT_TRUE(f.test(129));
  EXPECT_FALSE(f.test(128));
  EXPECT_EQ(f.on_bits(), (std::vector<int> { 0, 64, 129 }));
}

TEST(FingerprintTest, TanimotoMatchesSetArithmetic) {
  Rng rng(2);
  for (int trial = 0; trial < 1000; ++trial) {
    const int nbits = 1 + static_cast<int>(rng.below(300));
    const double density = rng.uniform();
    Fingerprint a(nbits), b(nbits);
    std::set<int> sa, sb;
    for (int i = 0; i < nbits; ++i) {
      if (rng.uniform() < density) {
        a.set(i);
        sa.insert(i);
      }
      if (rng.uniform() < density) {
        b.set(i);
        sb.insert(i);
      }
    }
    std::set<int> inter, uni;
    std::set_intersection(sa.begin(), sa.end(), sb.begin(), sb.end(),
                          std::inserter(inter, inter.end()));
    std::set_union(sa.begin(), sa.end(), sb.begin(), sb.end(), std::inserter(uni, uni.end()));
    const double want = uni.empty() ? 1.0 : double(inter.size()) / double(uni.size());
    ASSERT_EQ(tanimoto(a, b), want);
  }
}

TEST(FingerprintTest, TanimotoEdgeCases) {
  EXPECT_EQ(tanimoto(Fingerprint(64), Fingerprint(64)), 1.0);
  EXPECT_THROW(tanimoto(Fingerprint(64), Fingerprint(128)), std::invalid_argument);
  const Fingerprint f = ecfp(parse_smiles_or_throw("CCO"));
  EXPECT_EQ(tanimoto(f, f), 1.0);
}

// Environment count profiles, checked against RDKit's sparse Morgan counts.
TEST(FingerprintTest, EnvironmentCounts) {
  EXPECT_EQ(sorted_counts("c1ccccc1"), (std::vector<int> { 6, 6, 6 }));
  EXPECT_EQ(sorted_counts("CCO"), (std::vector<int>(6, 1)));
  EXPECT_EQ(sorted_counts("CC(=O)O"), (std::vector<int>(8, 1)));
}

TEST(FingerprintTest, PermutationInvariant) {
  Rng rng(8);
  for (const char *s: { "CC(=O)Oc1ccccc1C(=O)O", "CN1CCC[C@H]1c1cccnc1", "c1ccc2ccccc2c1" }) {
    const MolGraph g = parse_smiles_or_throw(s);
    const Fingerprint want = ecfp(g);
    for (int k = 0; k < 50; ++k) {
      std::vector<int> order(g.atom_count());
      std::iota(order.begin(), order.end(), 0);
      rng.shuffle(order);
      EXPECT_EQ(ecfp(g.permuted(order)), want) << s;
    }
  }
}

TEST(FingerprintTest, SimilarMoleculesScoreHigher) {
  const Fingerprint a = ecfp(parse_smiles_or_throw("CCCCCCO"));
  const Fingerprint b = ecfp(parse_smiles_or_throw("CCCCCCCO"));
  const Fingerprint c = ecfp(parse_smiles_or_throw("c1ccccc1N"));
  EXPECT_GT(tanimoto(a, b), tanimoto(a, c));
}

} // namespace
} // namespace exprmol
