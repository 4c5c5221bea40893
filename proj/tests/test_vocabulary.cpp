//
// SPDX-License-Identifier: Apache-2.0
//

#include "exprmol/vocabulary.h"

#include <gtest/gtest.h>

#include "support/toy_data.h"

namespace exprmol {
namespace {

TEST(VocabularyTest, SpecialsComeFirst) {
  const Vocabulary v;
  ASSERT_EQ(v.size(), Vocabulary::kSpecialCount);
  EXPECT_EQ(v.index(v.token(Vocabulary::kPad)), Vocabulary::kPad);
  EXPECT_EQ(v.index(v.token(Vocabulary::kSos)), Vocabulary::kSos);
  EXPECT_EQ(v.index(v.token(Vocabulary::kEos)), Vocabulary::kEos);
  EXPECT_EQ(v.index(v.token(Vocabulary::kUnk)), Vocabulary::kUnk);
  EXPECT_EQ(v.index("C"), -1);
}

TEST(VocabularyTest, BuildIsSortedAndDeduplicated) {
  const Vocabulary v = Vocabulary::build({ "CCO", "c1ccccc1Cl", "CC(=O)[O-]" });
  std::vector<std::string> lex(v.tokens().begin() + Vocabulary::kSpecialCount,
                               v.tokens().end());
  EXPECT_TRUE(std::is_sorted(lex.begin(), lex.end()));
  EXPECT_EQ(std::adjacent_find(lex.begin(), lex.end()), lex.end());
  for (const char *t: { "C", "O", "c", "1", "Cl", "(", ")", "=", "[O-]" })
    EXPECT_GE(v.index(t), Vocabulary::kSpecialCount) << t;
}

TEST(VocabularyTest, EncodeDecodeRoundTrip) {
  const auto smiles = testing::read_smiles_file(testing::data_path("drug_like.smi"));
  const Vocabulary v = Vocabulary::build(smiles);
  for (const auto &s: smiles) {
    const auto ids = v.encode(s);
    ASSERT_GE(ids.size(), 2u);
    EXPECT_EQ(ids.front(), Vocabulary::kSos);
    EXPECT_EQ(ids.back(), Vocabulary::kEos);
    EXPECT_EQ(ids.size(), token_lexemes(s).size() + 2);
    EXPECT_EQ(v.decode(ids), s);
  }
}

TEST(VocabularyTest, DecodeStopsAtEos) {
  const Vocabulary v = Vocabulary::build({ "CO" });
  const int c = v.index("C");
  const int o = v.index("O");
  const std::vector<int> ids { Vocabulary::kSos, c, Vocabulary::kPad, o, Vocabulary::kEos, c };
  EXPECT_EQ(v.decode(ids), "CO");
}

TEST(VocabularyTest, UnknownTokens) {
  const Vocabulary v = Vocabulary::build({ "CCO" });
  EXPECT_THROW(v.encode("CCN"), VocabularyError);
  const auto ids = v.encode("CCN", true);
  EXPECT_EQ(ids[3], Vocabulary::kUnk);
}

TEST(VocabularyTest, UntokenizableThrows) {
  EXPECT_THROW(Vocabulary::build({ "CC$" }), VocabularyError);
}

TEST(VocabularyTest, FromTokensRoundTrip) {
  const Vocabulary v = Vocabulary::build({ "CC(=O)Nc1ccc(O)cc1" });
  EXPECT_EQ(Vocabulary::from_tokens(v.tokens()), v);
  auto bad = v.tokens();
  std::swap(bad[0], bad[1]);
  EXPECT_THROW(Vocabulary::from_tokens(bad), VocabularyError);
  auto dup = v.tokens();
  dup.push_back(dup.back());
  EXPECT_THROW(Vocabulary::from_tokens(dup), VocabularyError);
}

} // namespace
} // namespace exprmol
