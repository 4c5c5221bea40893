//
// SPDX-License-Identifier: Apache-2.0
//

#include "exprmol/metrics.h"

#include <sstream>

#include <gtest/gtest.h>

#include "exprmol/canonical.h"
#include "exprmol/smiles.h"
#include "support/toy_data.h"

namespace exprmol {
namespace {

TEST(CorpusStatsTest, MixedCorpus) {
  // Ten strings, eight valid; CCO and OCC share a canonical form.
  const std::vector<std::string> generated { "CCO", "OCC", "c1ccccc1", "CCN",  "CCC",
                                             "C",   "N",   "O",        "C1CC", "C((" };
  const auto r = corpus_stats(generated, { "CCO", "N" });
  EXPECT_EQ(r.generated, 10u);
  EXPECT_EQ(r.valid, 8u);
  EXPECT_EQ(r.unique, 7u);
  EXPECT_EQ(r.novel, 5u);
  EXPECT_DOUBLE_EQ(*r.validity, 0.8);
  EXPECT_DOUBLE_EQ(*r.uniqueness, 7.0 / 8.0);
  EXPECT_DOUBLE_EQ(*r.novelty, 5.0 / 8.0);
  EXPECT_EQ(r.molecules[8].error, "unclosed_ring");
  EXPECT_EQ(r.molecules[9].error, "unmatched_branch");
  EXPECT_EQ(r.molecules[1].canonical, r.molecules[0].canonical);
}

TEST(CorpusStatsTest, TrainingVerbatimHasZeroNovelty) {
  const std::vector<std::string> train { "CCO", "c1ccccc1O", "CC(=O)O" };
  const auto r = corpus_stats(train, train);
  EXPECT_DOUBLE_EQ(*r.validity, 1.0);
  EXPECT_DOUBLE_EQ(*r.novelty, 0.0);
}

TEST(CorpusStatsTest, AllInvalidLeavesRatiosUndefined) {
  const auto r = corpus_stats({ "C(", "X" }, { "CCO" });
  EXPECT_DOUBLE_EQ(*r.validity, 0.0);
  EXPECT_FALSE(r.uniqueness.has_value());
  EXPECT_FALSE(r.novelty.has_value());
}

TEST(CorpusStatsTest, EmptyCorpus) {
  const auto r = corpus_stats({}, {});
  EXPECT_FALSE(r.validity.has_value());
  EXPECT_FALSE(r.uniqueness.has_value());
}

TEST(CorpusStatsTest, InvalidTrainingStringsIgnored) {
  const auto r = corpus_stats({ "CCO" }, { "C(", "OCC" });
  EXPECT_EQ(r.novel, 0u);
}

TEST(EvaluateTest, ScoresAndCandidate) {
  const auto ligands_smi = std::vector<std::string> { "CC(=O)Oc1ccccc1C(=O)O" };
  std::vector<MolGraph> ligands;
  for (const auto &s: ligands_smi)
    ligands.push_back(parse_smiles_or_throw(s));
  const auto corpus = testing::read_smiles_file(testing::data_path("drug_like.smi"));
  std::vector<MolGraph> graphs;
  for (const auto &s: corpus)
    graphs.push_back(parse_smiles_or_throw(s));
  const SaTables tables = build_sa_tables(graphs);

  const std::vector<std::string> generated { "OC(=O)c1ccccc1O", "CCO", "C(", "CC(=O)Oc1ccccc1" };
  EvaluateOptions opt;
  opt.sa_tables = &tables;
  opt.ligands = &ligands;
  const auto r = evaluate_corpus(generated, corpus, opt);
  ASSERT_EQ(r.valid, 3u);
  ASSERT_TRUE(r.mean_qed && r.mean_sa && r.candidate);
  for (const auto &m: r.molecules) {
    EXPECT_EQ(m.qed.has_value(), m.valid);
    EXPECT_EQ(m.sa.has_value(), m.valid);
    EXPECT_EQ(m.max_tanimoto.has_value(), m.valid);
  }
  double best = 0.0;
  for (const auto &m: r.molecules) {
    if (m.max_tanimoto)
      best = std::max(best, *m.max_tanimoto);
  }
  EXPECT_DOUBLE_EQ(r.candidate->score, best);

  opt.threads = 3;
  const auto threaded = evaluate_corpus(generated, corpus, opt);
  std::ostringstream a, b;
  write_report(a, r);
  write_report(b, threaded);
  EXPECT_EQ(a.str(), b.str());
}

TEST(EvaluateTest, WithoutLigandsOrTables) {
  const auto r = evaluate_corpus({ "CCO" }, {}, EvaluateOptions {});
  EXPECT_TRUE(r.mean_qed.has_value());
  EXPECT_FALSE(r.mean_sa.has_value());
  EXPECT_FALSE(r.candidate.has_value());
  EXPECT_FALSE(r.molecules[0].max_tanimoto.has_value());
}

TEST(CandidateTest, TieBreaksOnCanonicalString) {
  // Both candidates are identical to a ligand.
  const std::vector<MolGraph> mols { parse_smiles_or_throw("CCO"), parse_smiles_or_throw("CCN") };
  const auto c = select_candidate(mols, mols);
  EXPECT_DOUBLE_EQ(c.score, 1.0);
  const std::string a = canonical_smiles(mols[0]);
  const std::string b = canonical_smiles(mols[1]);
  EXPECT_EQ(c.canonical, std::min(a, b));
  EXPECT_EQ(c.index, a < b ? 0u : 1u);
}

TEST(CandidateTest, EmptyInputsThrow) {
  const std::vector<MolGraph> one { parse_smiles_or_throw("C") };
  EXPECT_THROW(select_candidate({}, one), std::invalid_argument);
  EXPECT_THROW(select_candidate(one, {}), std::invalid_argument);
}

TEST(ReportTest, Format) {
  const auto r = corpus_stats({ "CCO", "C(" }, {});
  std::ostringstream out;
  write_report(out, r);
  const std::string expected = "generated\t2\n"
                               "valid\t1\n"
                               "unique\t1\n"
                               "novel\t1\n"
                               "validity\t0.500000\n"
                               "uniqueness\t1.000000\n"
                               "novelty\t1.000000\n"
                               "mean_qed\tNA\n"
                               "mean_sa\tNA\n"
                               "\n"
                               "smiles\tvalid\tcanonical\terror\tqed\tsa\tmax_tanimoto\n"
                               "CCO\t1\t"
                               + r.molecules[0].canonical
                               + "\t\tNA\tNA\tNA\n"
                                 "C(\t0\t\tunmatched_branch\tNA\tNA\tNA\n";
  EXPECT_EQ(out.str(), expected);
}

TEST(LigandsTest, ReadsNamedLines) {
  std::istringstream in("# refs\nCCO ethanol\n\nc1ccccc1\tbenzene\n");
  EXPECT_EQ(read_ligands(in).size(), 2u);
  std::istringstream bad("CCO\nC(\n");
  EXPECT_THROW(read_ligands(bad), std::runtime_error);
}

} // namespace
} // namespace exprmol
