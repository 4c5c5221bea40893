//
// SPDX-License-Identifier: Apache-2.0
//

#include "exprmol/smiles.h"

#include <set>

#include <gtest/gtest.h>

#include "exprmol/canonical.h"
#include "exprmol/elements.h"
#include "exprmol/random.h"
#include "support/toy_data.h"

namespace exprmol {
namespace {

std::vector<std::string> lexemes(std::string_view s) {
  const auto r = tokenize(s);
  EXPECT_TRUE(r.ok()) << s;
  std::vector<std::string> out;
  for (const auto &t: r.tokens)
    out.push_back(t.lexeme);
  return out;
}

SmilesErrorKind error_of(std::string_view s) {
  const auto r = parse_smiles(s);
  EXPECT_FALSE(r.ok()) << s;
  return r.ok() ? SmilesErrorKind::kEmpty : r.error->kind;
}

// Structural invariants every accepted graph must satisfy.
void expect_sound(const MolGraph &g, const std::string &s) {
  std::set<std::pair<int, int>> pairs;
  for (const auto &b: g.bonds()) {
    EXPECT_NE(b.begin, b.end) << s;
    EXPECT_TRUE(pairs.insert({ std::min(b.begin, b.end), std::max(b.begin, b.end) }).second)
        << s;
    if (b.order == BondOrder::kAromatic) {
      EXPECT_TRUE(g.atom(b.begin).aromatic && g.atom(b.end).aromatic) << s;
    }
  }
  for (int i = 0; i < g.atom_count(); ++i) {
    const Atom &a = g.atom(i);
    EXPECT_GE(a.hydrogens, 0) << s;
    if (a.aromatic)
      continue;
    int buf[4];
    const auto allowed = allowed_valences(a.atomic_number, a.charge, buf);
    if (allowed.empty())
      continue;
    const int v = g.bond_order_sum(i) + a.hydrogens;
    EXPECT_LE(v, allowed.back()) << s << " atom " << i;
  }
}

TEST(TokenizeTest, SimpleChain) {
  EXPECT_EQ(lexemes("CCO"), (std::vector<std::string> { "C", "C", "O" }));
}

TEST(TokenizeTest, LongMolecule) {
  // Counted by hand: 22 atoms, 4 ring-bond digits, 4 bond symbols and
  // 8 parentheses, plus the '=' inside "(=".
  const auto t = lexemes("CCC1=CC(=C(C(=C1O)C(=O)NC[C@@H]2CCCN2CC)OC)Cl");
  EXPECT_EQ(t.size(), 39u);
  EXPECT_EQ(t.back(), "Cl");
  EXPECT_NE(std::find(t.begin(), t.end(), "[C@@H]"), t.end());
}

TEST(TokenizeTest, PercentRingClosure) {
  EXPECT_EQ(lexemes("C%12CC%12"), (std::vector<std::string> { "C", "%12", "C", "C", "%12" }));
}

TEST(TokenizeTest, TwoLetterHalogensAndKinds) {
  const auto r = tokenize("BrC(Cl)=[NH+].C#N");
  ASSERT_TRUE(r.ok());
  std::vector<TokenKind> kinds;
  for (const auto &t: r.tokens)
    kinds.push_back(t.kind);
  EXPECT_EQ(r.tokens[0].lexeme, "Br");
  EXPECT_EQ(kinds, (std::vector<TokenKind> {
                       TokenKind::kAtom, TokenKind::kAtom, TokenKind::kBranchOpen,
                       TokenKind::kAtom, TokenKind::kBranchClose, TokenKind::kBond,
                       TokenKind::kBracketAtom, TokenKind::kDot, TokenKind::kAtom,
                       TokenKind::kBond, TokenKind::kAtom }));
}

TEST(TokenizeTest, LexErrorsCarryOffsets) {
  auto r = tokenize("CC[NH");
  ASSERT_FALSE(r.ok());
  EXPECT_EQ(r.error->kind, SmilesErrorKind::kLex);
  EXPECT_EQ(r.error->offset, 2u);
  r = tokenize("CC$");
  ASSERT_FALSE(r.ok());
  EXPECT_EQ(r.error->offset, 2u);
}

TEST(TokenizeTest, NeverThrowsOnRandomInput) {
  const std::string alphabet = "CNOSPFIBrcnos()[]=#-+@%123456789.:/\\Hl$ ";
  Rng rng(17);
  for (int i = 0; i < 5000; ++i) {
    std::string s;
    const std::size_t n = rng.below(20);
    for (std::size_t k = 0; k < n; ++k)
      s += alphabet[rng.below(alphabet.size())];
    EXPECT_NO_THROW({
      const auto t = tokenize(s);
      if (!t.ok()) {
        EXPECT_LE(t.error->offset, s.size());
      }
      const auto p = parse_smiles(s);
      if (p.ok()) {
        expect_sound(p.graph, s);
      }
    }) << s;
  }
}

TEST(ParseTest, Examples) {
  EXPECT_EQ(error_of("C(C)(C)(C)(C)C"), SmilesErrorKind::kValence);
  EXPECT_EQ(error_of("C1CC"), SmilesErrorKind::kUnclosedRing);
  EXPECT_EQ(error_of(""), SmilesErrorKind::kEmpty);
  EXPECT_EQ(error_of("C(C"), SmilesErrorKind::kUnmatchedBranch);
  EXPECT_EQ(error_of("C=1CCC#1"), SmilesErrorKind::kRingBondConflict);
}

TEST(ParseTest, BenzeneHydrogens) {
  const auto r = parse_smiles("c1ccccc1");
  ASSERT_TRUE(r.ok());
  const MolGraph &g = r.graph;
  ASSERT_EQ(g.atom_count(), 6);
  ASSERT_EQ(g.bond_count(), 6);
  for (int i = 0; i < 6; ++i) {
    EXPECT_TRUE(g.atom(i).aromatic);
    EXPECT_EQ(g.atom(i).hydrogens, 1);
  }
  for (const auto &b: g.bonds())
    EXPECT_EQ(b.order, BondOrder::kAromatic);
}

TEST(ParseTest, ImplicitHydrogensUseSmallestFittingValence) {
  auto h = [](std::string_view s, int atom) { return parse_smiles_or_throw(s).atom(atom).hydrogens; };
  EXPECT_EQ(h("C", 0), 4);
  EXPECT_EQ(h("CC=O", 2), 0);
  EXPECT_EQ(h("CN(C)C", 1), 0);
  EXPECT_EQ(h("CS(=O)C", 1), 0); // valence 4
  EXPECT_EQ(h("CP(=O)(O)O", 1), 0);
  EXPECT_EQ(h("c1cc[nH]c1", 3), 1);
  EXPECT_EQ(h("c1ccncc1", 3), 0);
}

TEST(ParseTest, BracketAtoms) {
  const MolGraph g = parse_smiles_or_throw("[NH4+].[13CH3][O-]");
  EXPECT_EQ(g.atom(0).charge, 1);
  EXPECT_EQ(g.atom(0).hydrogens, 4);
  EXPECT_EQ(g.atom(1).isotope, 13);
  EXPECT_EQ(g.atom(1).hydrogens, 3);
  EXPECT_EQ(g.atom(2).charge, -1);
  EXPECT_EQ(g.atom(2).hydrogens, 0);
  EXPECT_EQ(g.components().size(), 2u);
}

TEST(ParseTest, ChargeAdjustsValence) {
  EXPECT_TRUE(is_valid_smiles("C[N+](C)(C)C"));
  EXPECT_FALSE(is_valid_smiles("C[N](C)(C)(C)(C)C"));
  EXPECT_TRUE(is_valid_smiles("C[O-]"));
  EXPECT_FALSE(is_valid_smiles("FCl(F)F"));
}

TEST(ParseTest, AromaticAtomsMustBeInRings) {
  EXPECT_EQ(error_of("cC"), SmilesErrorKind::kAromaticity);
  EXPECT_EQ(error_of("c1cccc1"), SmilesErrorKind::kAromaticity);
}

TEST(ParseTest, InvalidCorpusKinds) {
  const auto cases = testing::read_invalid_cases();
  ASSERT_GE(cases.size(), 50u);
  for (const auto &c: cases) {
    const auto r = parse_smiles(c.smiles);
    ASSERT_FALSE(r.ok()) << c.smiles;
    EXPECT_EQ(error_kind_name(r.error->kind), c.kind) << c.smiles << ": " << r.error->message;
  }
}

TEST(ParseTest, ErrorKindNamesRoundTrip) {
  for (int k = 0; k <= static_cast<int>(SmilesErrorKind::kAromaticity); ++k) {
    const auto kind = static_cast<SmilesErrorKind>(k);
    EXPECT_EQ(error_kind_from_name(error_kind_name(kind)), kind);
  }
  EXPECT_FALSE(error_kind_from_name("nope"));
}

TEST(WriteTest, Examples) {
  EXPECT_EQ(write_smiles(parse_smiles_or_throw("C")), "C");
  const std::string s = write_smiles(parse_smiles_or_throw("CCO"));
  EXPECT_EQ(canonicalize(s), canonicalize("CCO"));
  const MolGraph benzene = parse_smiles_or_throw(write_smiles(parse_smiles_or_throw("c1ccccc1")));
  int aromatic = 0;
  for (const auto &a: benzene.atoms())
    aromatic += a.aromatic;
  EXPECT_EQ(aromatic, 6);
}

TEST(WriteTest, PreservesStereoMarks) {
  const std::string s = write_smiles(parse_smiles_or_throw("N[C@@H](C)C(=O)O"));
  EXPECT_NE(s.find('@'), std::string::npos) << s;
  const std::string t = write_smiles(parse_smiles_or_throw("F/C=C/F"));
  EXPECT_NE(t.find('/'), std::string::npos) << t;
}

TEST(WriteTest, DrugLikeCorpusRoundTrips) {
  const auto corpus = testing::read_smiles_file(testing::data_path("drug_like.smi"));
  ASSERT_GE(corpus.size(), 500u);
  for (const auto &s: corpus) {
    const auto r = parse_smiles(s);
    ASSERT_TRUE(r.ok()) << s << ": " << r.error->message;
    expect_sound(r.graph, s);
    const auto again = parse_smiles(write_smiles(r.graph));
    ASSERT_TRUE(again.ok()) << s;
    EXPECT_EQ(again.graph.atom_count(), r.graph.atom_count()) << s;
    EXPECT_EQ(again.graph.bond_count(), r.graph.bond_count()) << s;
    EXPECT_EQ(canonical_smiles(again.graph), canonical_smiles(r.graph)) << s;
  }
}

} // namespace
} // namespace exprmol
