//
// SPDX-License-Identifier: Apache-2.0
//

#include "exprmol/profile.h"

#include <cmath>
#include <limits>
#include <sstream>

#include <gtest/gtest.h>

#include "exprmol/random.h"
#include "support/toy_data.h"

namespace exprmol {
namespace {

ProfileSet parse(const std::string &text) {
  std::istringstream in(text);
  return load_profiles(in);
}

IngestError ingest_error(const std::string &text) {
  try {
    parse(text);
  } catch (const IngestError &e) {
    return e;
  }
  ADD_FAILURE() << "no IngestError for:\n" << text;
  return IngestError("", 0, 0);
}

TEST(ProfileTest, LoadsSmallFile) {
  const ProfileSet set = parse("sample_id,g1,g2,g3\na,1,2,3\nb,-1.5,0,2e-3\n");
  EXPECT_EQ(set.gene_ids, (std::vector<std::string> { "g1", "g2", "g3" }));
  ASSERT_EQ(set.size(), 2u);
  EXPECT_EQ(set.profiles[1].sample_id, "b");
  EXPECT_EQ(set.profiles[1].values, (std::vector<double> { -1.5, 0.0, 0.002 }));
  EXPECT_FALSE(set.stats.has_value());
}

TEST(ProfileTest, NaNCellNamesRowAndColumn) {
  const IngestError e = ingest_error("sample_id,g1,g2\na,1,2\nb,3,NaN\n");
  EXPECT_EQ(e.row(), 3u);
  EXPECT_EQ(e.column(), 3u);
  EXPECT_NE(std::string(e.what()).find("row 3, column 3"), std::string::npos) << e.what();
}

TEST(ProfileTest, RejectsMalformedInput) {
  EXPECT_EQ(ingest_error("sample_id,g1\na,1\na,2\n").row(), 3u); // duplicate id
  EXPECT_EQ(ingest_error("sample_id,g1,g2\na,1\n").row(), 2u);   // ragged
  EXPECT_EQ(ingest_error("sample_id,g1\na,x\n").column(), 2u);   // non-numeric
  EXPECT_EQ(ingest_error("sample_id,g1\na,inf\n").column(), 2u); // non-finite
  EXPECT_EQ(ingest_error("id,g1\na,1\n").row(), 1u);             // bad header
  EXPECT_EQ(ingest_error("sample_id,g1,g1\na,1,2\n").column(), 3u);
  EXPECT_EQ(ingest_error("").row(), 1u);
}

TEST(ProfileTest, TabDelimiter) {
  std::istringstream in("sample_id\tg1\na\t4\n");
  EXPECT_EQ(load_profiles(in, Delimiter::kTab).profiles[0].values[0], 4.0);
}

TEST(ProfileTest, WriteLoadRoundTripIsBitExact) {
  ProfileSet set;
  set.gene_ids = { "a", "b", "c", "d" };
  Rng rng(9);
  for (int i = 0; i < 20; ++i) {
    Profile p;
    p.sample_id = "s" + std::to_string(i);
    p.values = { rng.normal() * 1e-7, rng.normal() * 1e9, std::nextafter(1.0, 2.0),
                 -std::numeric_limits<double>::denorm_min() };
    set.profiles.push_back(p);
  }
  std::stringstream buf;
  write_profiles(buf, set);
  const ProfileSet back = load_profiles(buf);
  EXPECT_EQ(back.gene_ids, set.gene_ids);
  EXPECT_EQ(back.profiles, set.profiles);
}

TEST(StandardizeTest, HandComputedColumn) {
  // Column [1, 3]: mean 2, population std 1.
  const ProfileSet out = standardize(parse("sample_id,g\na,1\nb,3\n"));
  EXPECT_EQ(out.profiles[0].values[0], -1.0);
  EXPECT_EQ(out.profiles[1].values[0], 1.0);
  ASSERT_TRUE(out.stats);
  EXPECT_EQ(out.stats->mean[0], 2.0);
  EXPECT_EQ(out.stats->stddev[0], 1.0);
}

TEST(StandardizeTest, ConstantGeneIsFlaggedAndZeroed) {
  const ProfileSet out = standardize(parse("sample_id,g1,g2\na,5,1\nb,5,2\nc,5,3\n"));
  EXPECT_TRUE(out.stats->degenerate[0]);
  EXPECT_FALSE(out.stats->degenerate[1]);
  for (const auto &p: out.profiles)
    EXPECT_EQ(p.values[0], 0.0);
}

TEST(StandardizeTest, MomentsAndIdempotence) {
  const ProfileSet raw = testing::synthetic_profiles(2, 25, 30, 0.7, 4);
  const ProfileSet once = standardize(raw);
  for (std::size_t g = 0; g < raw.gene_count(); ++g) {
    double m = 0.0, v = 0.0;
    for (const auto &p: once.profiles)
      m += p.values[g];
    m /= double(once.size());
    for (const auto &p: once.profiles)
      v += (p.values[g] - m) * (p.values[g] - m);
    EXPECT_NEAR(m, 0.0, 1e-9);
    EXPECT_NEAR(std::sqrt(v / double(once.size())), 1.0, 1e-9);
  }
  const ProfileSet twice = standardize(once);
  for (std::size_t i = 0; i < once.size(); ++i) {
    for (std::size_t g = 0; g < once.gene_count(); ++g)
      EXPECT_NEAR(twice.profiles[i].values[g], once.profiles[i].values[g], 1e-12);
  }
}

TEST(StandardizeTest, EmptySetThrows) {
  EXPECT_THROW(standardize(ProfileSet {}), std::invalid_argument);
}

TEST(StandardizeTest, ApplyStatsReproducesStandardize) {
  const ProfileSet raw = testing::synthetic_profiles(1, 10, 5, 1.0, 8);
  const ProfileSet out = standardize(raw);
  EXPECT_EQ(apply_stats(raw.profiles[3].values, *out.stats), out.profiles[3].values);
  EXPECT_THROW(apply_stats({ 1.0 }, *out.stats), std::invalid_argument);
}

TEST(ReverseTest, Examples) {
  const Profile p { "x", { 1, -2, 0 } };
  const Profile r = reverse_profile(p);
  EXPECT_EQ(r.sample_id, "x_rev");
  EXPECT_EQ(r.values, (std::vector<double> { -1, 2, 0 }));
  EXPECT_FALSE(std::signbit(r.values[2]));
  EXPECT_EQ(reverse_profile(Profile { "z", { 0, 0 } }).values, (std::vector<double> { 0, 0 }));
  EXPECT_EQ(reverse_profile(r).values, p.values);
}

TEST(AverageTest, Examples) {
  const ProfileSet set = parse("sample_id,g1,g2\na,0,2\nb,2,0\nc,7,7\nd,7,7\n");
  const ProfileSet out =
      average_replicates(set, { { "a", "k1" }, { "b", "k1" }, { "c", "k2" }, { "d", "k2" } });
  ASSERT_EQ(out.size(), 2u);
  EXPECT_EQ(out.profiles[0].sample_id, "k1");
  EXPECT_EQ(out.profiles[0].values, (std::vector<double> { 1, 1 }));
  EXPECT_EQ(out.profiles[1].values, (std::vector<double> { 7, 7 }));
}

TEST(AverageTest, SingletonGroupsAreIdentity) {
  const ProfileSet set = parse("sample_id,g1\na,1\nb,2\nc,3\n");
  const ProfileSet out = average_replicates(set, { { "a", "a" }, { "b", "b" }, { "c", "c" } });
  EXPECT_EQ(out.profiles, set.profiles);
}

TEST(AverageTest, UnmappedSampleThrows) {
  const ProfileSet set = parse("sample_id,g1\na,1\nb,2\n");
  EXPECT_THROW(average_replicates(set, { { "a", "k" } }), std::invalid_argument);
}

TEST(AverageTest, CommutesWithReversal) {
  const ProfileSet set = testing::synthetic_profiles(3, 4, 6, 1.0, 12);
  std::map<std::string, std::string> group, group_rev;
  for (std::size_t i = 0; i < set.size(); ++i) {
    const std::string key = "k" + std::to_string(i % 5);
    group[set.profiles[i].sample_id] = key;
    group_rev[set.profiles[i].sample_id + "_rev"] = key;
  }
  const ProfileSet a = reverse_profiles(average_replicates(set, group));
  const ProfileSet b = average_replicates(reverse_profiles(set), group_rev);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    EXPECT_EQ(a.profiles[i].values, b.profiles[i].values);
}

TEST(AverageTest, GroupFileParsing) {
  std::istringstream in("sample_id,key\n# comment\na,k1\nb,k1\n");
  const auto group = load_group_map(in);
  EXPECT_EQ(group.size(), 2u);
  EXPECT_EQ(group.at("b"), "k1");
  std::istringstream dup("a,k1\na,k2\n");
  EXPECT_THROW(load_group_map(dup), IngestError);
}

} // namespace
} // namespace exprmol
