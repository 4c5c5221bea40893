//
// SPDX-License-Identifier: Apache-2.0
//

#include "exprmol/descriptors.h"

#include <cmath>

#include <gtest/gtest.h>

#include "exprmol/qed.h"
#include "exprmol/smiles.h"

namespace exprmol {
namespace {

// Reference values from RDKit (tools/oracles/descriptor_oracle.py). RDKit's
// QED uses SMARTS acceptor/donor and strict rotatable-bond definitions, so
// its QED is matched within kQedTolerance rather than exactly.
constexpr double kQedTolerance = 0.02;

struct DrugRef {
  const char *name;
  const char *smiles;
  double mw, logp, tpsa;
  int hbd, hba, arom, alerts;
  double qed;
};

constexpr DrugRef kDrugs[] = {
  { "aspirin", "CC(=O)Oc1ccccc1C(=O)O", 180.159, 1.3101, 63.60, 1, 4, 1, 2, 0.550122 },
  { "caffeine", "Cn1c(=O)c2c(ncn2C)n(C)c1=O", 194.194, -1.0293, 61.82, 0, 6, 2, 0, 0.538463 },
  { "ibuprofen", "CC(C)Cc1ccc(C(C)C(=O)O)cc1", 206.285, 3.0732, 37.30, 1, 2, 1, 0, 0.821600 },
  { "paracetamol", "CC(=O)Nc1ccc(O)cc1", 151.165, 1.3506, 49.33, 2, 3, 1, 1, 0.595026 },
  { "nicotine", "CN1CCC[C@H]1c1cccnc1", 162.236, 1.8483, 16.13, 0, 2, 1, 0, 0.626152 },
  { "melatonin", "COc1ccc2[nH]cc(CCNC(C)=O)c2c1", 232.283, 1.8551, 54.12, 2, 4, 2, 0, 0.844935 },
  { "isoproterenol", "CC(C)NCC(O)c1ccc(O)c(O)c1", 211.261, 1.1292, 72.72, 4, 4, 1, 1, 0.563272 },
  { "clotrimazole_like", "Clc1ccc(C(c2ccccc2)n2ccnc2)cc1", 268.747, 4.1742, 17.82, 0, 2, 3, 0,
    0.696934 },
  { "diclofenac", "O=C(O)Cc1ccccc1Nc1c(Cl)cccc1Cl", 296.153, 4.3641, 49.33, 2, 3, 2, 0,
    0.880729 },
  { "diazepam", "CN1C(=O)CN=C(c2ccccc2)c2cc(Cl)ccc21", 284.746, 3.1538, 32.67, 0, 3, 2, 0,
    0.791645 },
};

// QED of arbitrary descriptor tuples, evaluated by RDKit through its
// qedProperties argument.
struct QedRef {
  double mw, alogp;
  int hba, hbd;
  double psa;
  int rotb, arom, alerts;
  double qed;
};

constexpr QedRef kQedRefs[] = {
  { 228.473470, 3.074980, 5, 7, 125.144061, 2, 4, 0, 0.283815621458 },
  { 731.613800, 2.100020, 8, 3, 38.348821, 15, 4, 4, 0.074480721337 },
  { 407.264907, 4.307886, 2, 3, 126.972132, 16, 3, 0, 0.327165253743 },
  { 553.558607, -3.167591, 12, 0, 60.253532, 0, 6, 2, 0.141015090346 },
  { 404.561816, 5.344711, 14, 6, 142.825897, 13, 3, 4, 0.094218230605 },
  { 383.465792, 8.162627, 14, 5, 19.490862, 4, 3, 1, 0.279189040038 },
  { 243.485919, 4.736536, 12, 4, 84.229703, 12, 4, 2, 0.204746645497 },
  { 450.577314, 1.298486, 3, 5, 136.396427, 0, 6, 2, 0.176181601132 },
  { 793.242234, 4.726556, 2, 5, 192.926589, 3, 5, 1, 0.165345732557 },
  { 524.731929, 8.844936, 4, 4, 24.886967, 15, 6, 3, 0.061254454877 },
  { 116.388570, 6.407739, 6, 2, 4.025071, 13, 6, 3, 0.101261329637 },
  { 704.575268, -3.425529, 9, 0, 75.560954, 10, 4, 2, 0.124124796235 },
  { 429.065280, 8.980616, 4, 0, 15.394141, 1, 1, 3, 0.251436349160 },
  { 268.709299, -0.576148, 11, 0, 195.977256, 10, 2, 2, 0.394411783282 },
  { 768.994570, 7.656575, 6, 6, 92.081927, 16, 3, 4, 0.038864091049 },
  { 560.728128, -2.666553, 12, 8, 54.260126, 7, 2, 3, 0.103707478535 },
  { 783.347987, 2.774655, 8, 5, 2.291497, 13, 4, 2, 0.102918866233 },
  { 65.039668, 4.005373, 10, 2, 12.016102, 10, 3, 2, 0.263891570147 },
  { 559.461049, 0.583501, 11, 4, 147.606858, 0, 4, 0, 0.239960656244 },
  { 766.130778, -3.723717, 5, 4, 125.593869, 9, 4, 4, 0.060481090896 },
  { 290.019039, 0.731416, 5, 5, 168.768189, 8, 2, 3, 0.273533744436 },
  { 128.653794, 6.569739, 9, 2, 62.003339, 7, 5, 2, 0.187088741566 },
  { 229.021383, -1.563874, 6, 1, 20.368339, 10, 2, 1, 0.493296594433 },
  { 378.823049, 7.121958, 2, 1, 67.342047, 6, 4, 3, 0.220219511520 },
  { 252.949911, 6.231090, 0, 8, 191.516206, 10, 6, 4, 0.059317699913 },
  { 187.689735, -0.378302, 12, 1, 161.251568, 11, 4, 1, 0.303425966874 },
  { 365.954294, 2.739169, 13, 4, 92.944159, 13, 2, 3, 0.238084160637 },
  { 476.249193, -3.537925, 6, 2, 39.914212, 15, 6, 4, 0.069355928316 },
  { 790.185241, 1.646580, 14, 3, 6.463630, 14, 6, 4, 0.063881487281 },
  { 772.524559, 3.070194, 14, 3, 172.306225, 9, 0, 1, 0.292227343272 },
  { 83.807608, 7.746921, 11, 8, 184.770960, 13, 4, 0, 0.078934981461 },
  { 59.858373, 5.688877, 2, 8, 59.977614, 0, 4, 4, 0.058101901127 },
  { 360.312836, 8.207552, 9, 1, 68.270531, 8, 6, 4, 0.125029717446 },
  { 407.898123, 6.170226, 5, 3, 39.466734, 3, 1, 1, 0.522422469860 },
  { 643.753939, 7.982965, 12, 2, 164.699753, 0, 3, 4, 0.105111736966 },
  { 696.915926, -3.350886, 4, 3, 53.717222, 16, 4, 3, 0.065239796651 },
  { 88.229645, 0.200510, 13, 0, 171.404488, 4, 0, 0, 0.455846283982 },
  { 87.374979, 2.276568, 0, 1, 103.080910, 15, 2, 1, 0.321961655378 },
  { 285.934850, 0.566764, 10, 6, 117.322624, 11, 2, 1, 0.327112573302 },
  { 791.017066, 1.573096, 2, 8, 0.697784, 12, 6, 0, 0.095138671718 },
};

class DrugDescriptorTest: public ::testing::TestWithParam<DrugRef> { };

TEST_P(DrugDescriptorTest, MatchesReference) {
  const DrugRef &r = GetParam();
  const MolGraph g = parse_smiles_or_throw(r.smiles);
  const Descriptors d = compute_descriptors(g);
  EXPECT_NEAR(d.mw, r.mw, 5e-4);
  EXPECT_NEAR(d.alogp, r.logp, 5e-5);
  EXPECT_NEAR(d.psa, r.tpsa, 5e-3);
  EXPECT_EQ(d.hbd, r.hbd);
  EXPECT_EQ(d.hba, r.hba);
  EXPECT_EQ(d.arom, r.arom);
  EXPECT_EQ(d.alerts, r.alerts);
  EXPECT_NEAR(qed(g), r.qed, kQedTolerance);
}

INSTANTIATE_TEST_SUITE_P(Drugs, DrugDescriptorTest, ::testing::ValuesIn(kDrugs),
                         [](const auto &info) { return std::string(info.param.name); });

TEST(QedTest, FromDescriptorsMatchesReference) {
  for (const auto &r: kQedRefs) {
    Descriptors d;
    d.mw = r.mw;
    d.alogp = r.alogp;
    d.hba = r.hba;
    d.hbd = r.hbd;
    d.psa = r.psa;
    d.rotb = r.rotb;
    d.arom = r.arom;
    d.alerts = r.alerts;
    EXPECT_NEAR(qed_from_descriptors(d), r.qed, 1e-11) << r.mw;
  }
}

TEST(QedTest, AdsPeaksAtOne) {
  // Each desirability is normalized by its maximum.
  for (const auto &p: qed_ads_parameters()) {
    double best = 0.0;
    for (double x = -10.0; x < 700.0; x += 0.01)
      best = std::max(best, ads(x, p));
    EXPECT_NEAR(best, 1.0, 1e-3);
  }
}

TEST(QedTest, BoundedInUnitInterval) {
  for (const char *s: { "C", "O", "CCCCCCCCCCCCCCCCCCCCCCCCCCCCCCCCCCCCCC", "c1ccccc1",
                        "O=[N+]([O-])c1ccc(N=Nc2ccccc2)cc1" }) {
    const double q = qed(parse_smiles_or_throw(s));
    EXPECT_GE(q, 0.0) << s;
    EXPECT_LE(q, 1.0) << s;
  }
}

TEST(DescriptorTest, RotatableBondsByRule) {
  auto rotb = [](const char *s) { return rotatable_bonds(parse_smiles_or_throw(s)); };
  EXPECT_EQ(rotb("CC"), 0);          // terminal atoms
  EXPECT_EQ(rotb("CCCC"), 1);
  EXPECT_EQ(rotb("C1CCCCC1"), 0);    // ring bonds
  EXPECT_EQ(rotb("CC(=O)NC"), 0);    // amide C-N excluded
  EXPECT_EQ(rotb("CC(=O)Oc1ccccc1C(=O)O"), 3);
  EXPECT_EQ(rotb("CC=CC"), 0);       // double bonds
  EXPECT_EQ(rotb("c1ccccc1-c1ccccc1"), 1);
}

TEST(DescriptorTest, DonorsAndAcceptorsByRule) {
  const MolGraph g = parse_smiles_or_throw("NCC(=O)OCS");
  EXPECT_EQ(hydrogen_bond_donors(g), 1);    // N with H; thiol S not counted
  EXPECT_EQ(hydrogen_bond_acceptors(g), 3); // N + O count
}

TEST(DescriptorTest, AromaticRings) {
  EXPECT_EQ(aromatic_ring_count(parse_smiles_or_throw("c1ccc2ccccc2c1")), 2);
  EXPECT_EQ(aromatic_ring_count(parse_smiles_or_throw("C1CCc2ccccc2C1")), 1);
  EXPECT_EQ(aromatic_ring_count(parse_smiles_or_throw("CCO")), 0);
}

TEST(DescriptorTest, ExplicitHydrogensAreAppended) {
  const MolGraph g = parse_smiles_or_throw("CO");
  const MolGraph h = with_explicit_hydrogens(g);
  EXPECT_EQ(h.atom_count(), 6);
  EXPECT_EQ(h.atom(0).atomic_number, 6);
  EXPECT_EQ(h.atom(1).atomic_number, 8);
  for (int i = 2; i < 6; ++i)
    EXPECT_EQ(h.atom(i).atomic_number, 1);
  EXPECT_NEAR(molecular_weight(h), molecular_weight(g), 1e-9);
}

TEST(DescriptorTest, CrippenContributionsSumToTotal) {
  const MolGraph g = parse_smiles_or_throw("CC(C)NCC(O)c1ccc(O)c(O)c1");
  double total = 0.0;
  for (const auto &c: crippen_contributions(g))
    total += c.logp;
  EXPECT_NEAR(total, crippen_logp(g), 1e-12);
  double psa = 0.0;
  for (double v: tpsa_contributions(g))
    psa += v;
  EXPECT_NEAR(psa, tpsa(g), 1e-12);
}

TEST(DescriptorTest, AlertPatternsCompile) {
  EXPECT_GT(structural_alert_patterns().size(), 100u);
  EXPECT_EQ(structural_alert_count(parse_smiles_or_throw("CCCC")), 0);
  EXPECT_GE(structural_alert_count(parse_smiles_or_throw("O=[N+]([O-])c1ccccc1")), 1);
}

} // namespace
} // namespace exprmol
