// Copyright 2026 The rpys Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <random>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "rpys/cr_cluster.hpp"
#include "rpys/errors.hpp"
#include "rpys/wos_parser.hpp"

namespace rpys {
namespace {

using testing::closure_oracle;
using testing::partition_of;

std::vector<CitedRef> refs(const std::vector<std::string>& lines) {
  std::vector<CitedRef> out;
  for (const auto& l : lines) out.push_back(parse_cr_line(l));
  return out;
}

TEST(EditDistance, MatchesFullTableOracle) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> len(0, 25);
  std::uniform_int_distribution<int> ch('a', 'e');
  for (int i = 0; i < 3000; ++i) {
    std::string a, b;
    for (int n = len(rng); n > 0; --n) a += static_cast<char>(ch(rng));
    for (int n = len(rng); n > 0; --n) b += static_cast<char>(ch(rng));
    const auto d = testing::levenshtein_oracle(a, b);
    EXPECT_EQ(edit_distance(a, b), d);
    for (std::size_t limit : {std::size_t{0}, std::size_t{2}, std::size_t{5}, std::size_t{30}}) {
      const auto bounded = bounded_edit_distance(a, b, limit);
      if (d <= limit) {
        EXPECT_EQ(bounded, d);
      } else {
        EXPECT_GT(bounded, limit);
      }
    }
  }
}

TEST(Similarity, Examples) {
  EXPECT_DOUBLE_EQ(key_similarity("BECKE AD|1988|PHYS REV A|38|3098",
                                  "BECKE AD|1988|PHYS REV A|38|3098"),
                   1.0);
  EXPECT_NEAR(key_similarity("BECKE AD 1988 PHYS REV A", "BECKE AD 1980 PHYS REV A"),
              1.0 - 1.0 / 24.0, 1e-12);
  EXPECT_DOUBLE_EQ(key_similarity("A", "B"), 0.0);
  EXPECT_DOUBLE_EQ(key_similarity("", ""), 1.0);
  const auto a = parse_cr_line("Becke AD, 1988, PHYS REV A, V38, P3098");
  const auto b = parse_cr_line("BECKE A.D., 1988, Phys. Rev. A, V38, P3098");
  EXPECT_DOUBLE_EQ(cr_similarity(a, b), 1.0);
}

TEST(Similarity, SymmetricAndBounded) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 2000; ++i) {
    auto s = testing::render(testing::random_work(rng, 1960, 1962));
    const auto a = parse_cr_line(s);
    const auto b = parse_cr_line(testing::mutate(testing::mutate(s, rng), rng));
    const double ab = cr_similarity(a, b);
    EXPECT_EQ(ab, cr_similarity(b, a));
    EXPECT_GE(ab, 0.0);
    EXPECT_LE(ab, 1.0);
  }
}

TEST(FieldsCompatible, Constraints) {
  const auto a = parse_cr_line("Becke AD, 1988, PHYS REV A, V38, P3098");
  const auto b = parse_cr_line("Becke AD, 1988, PHYS REV A, V83, P3098");
  const auto c = parse_cr_line("Becke AD, 1980, PHYS REV A, V38, P3098");
  ClusterConfig config;
  EXPECT_TRUE(fields_compatible(a, a, config));
  EXPECT_FALSE(fields_compatible(a, b, config));
  EXPECT_FALSE(fields_compatible(a, c, config));
  config.require_volume_match = false;
  EXPECT_TRUE(fields_compatible(a, b, config));
  config.cross_rpy = true;
  EXPECT_TRUE(fields_compatible(a, c, config));
}

TEST(Cluster, OneCharacterApartLinks) {
  const auto occ = refs({"Slater JC, 1951, PHYS REV, V81, P385",
                         "Slater JC, 1951, PHYS REW, V81, P385"});
  const auto c = cluster(occ, ClusterConfig{});
  EXPECT_EQ(c.clusters.size(), 1u);
}

TEST(Cluster, VolumeMismatchSplits) {
  const auto occ = refs({"Becke AD, 1988, PHYS REV A, V38, P3098",
                         "Becke AD, 1988, PHYS REV A, V83, P3098"});
  EXPECT_EQ(cluster(occ, ClusterConfig{}).clusters.size(), 2u);
  ClusterConfig loose;
  loose.require_volume_match = false;
  EXPECT_EQ(cluster(occ, loose).clusters.size(), 1u);
}

TEST(Cluster, YearBlockingAndCrossRpy) {
  const auto occ = refs({"Becke AD, 1988, PHYS REV A, V38, P3098",
                         "Becke AD, 1980, PHYS REV A, V38, P3098"});
  EXPECT_EQ(cluster(occ, ClusterConfig{}).clusters.size(), 2u);
  ClusterConfig cross;
  cross.cross_rpy = true;
  EXPECT_EQ(cluster(occ, cross).clusters.size(), 1u);
}

TEST(Cluster, ThresholdOneGroupsIdenticalKeys) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    const auto occ = testing::random_variant_corpus(rng, 120);
    ClusterConfig strict;
    strict.threshold = 1.0;
    const auto c = cluster(occ, strict);
    for (const auto& members : c.clusters) {
      for (auto v : members) EXPECT_EQ(c.variants[v].key, c.variants[members[0]].key);
    }
    // and no two clusters share a key with identical compared fields
    std::set<std::string> seen;
    for (const auto& members : c.clusters) {
      const auto& r = c.variants[members[0]].ref;
      const std::string sig = c.variants[members[0]].key + "#" + r.volume.value_or("-") + "#" +
                              r.page.value_or("-");
      EXPECT_TRUE(seen.insert(sig).second) << sig;
    }
  }
}

TEST(Cluster, TransitiveChains) {
  // Neither end is similar enough to the other; the middle links both.
  ClusterConfig config;
  config.threshold = 0.9;
  config.require_volume_match = false;
  config.require_page_match = false;
  const auto occ = refs({"ABCDEFGHIJ, 1970, KLMNOPQRST", "ABCDEFGHIJ, 1970, KLMNOPQRXY",
                         "ABCDEFGHIJ, 1970, KLMNOPWZXY"});
  ASSERT_LT(cr_similarity(occ[0], occ[2]), 0.9);
  EXPECT_EQ(cluster(occ, config).clusters.size(), 1u);
}

TEST(Cluster, EqualsClosureOracleUnderManyConfigs) {
  std::mt19937_64 rng(1234);
  std::uniform_real_distribution<double> threshold(0.5, 1.0);
  std::bernoulli_distribution flag(0.5);
  for (int trial = 0; trial < 40; ++trial) {
    const auto occ = testing::random_variant_corpus(rng, 150);
    ClusterConfig config;
    config.threshold = threshold(rng);
    config.require_volume_match = flag(rng);
    config.require_page_match = flag(rng);
    config.require_doi_match = flag(rng);
    config.cross_rpy = flag(rng);
    config.threads = 1 + trial % 4;
    EXPECT_EQ(partition_of(cluster(occ, config)), closure_oracle(occ, config))
        << "trial " << trial << " threshold " << config.threshold;
  }
}

TEST(Cluster, ThreadCountDoesNotChangeResult) {
  std::mt19937_64 rng(8);
  const auto occ = testing::random_variant_corpus(rng, 300);
  ClusterConfig one;
  one.threads = 1;
  ClusterConfig many;
  many.threads = 8;
  const auto a = cluster(occ, one);
  const auto b = cluster(occ, many);
  EXPECT_EQ(a.clusters, b.clusters);
  EXPECT_EQ(merge(a), merge(b));
}

TEST(Cluster, LowerThresholdNeverAddsClusters) {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 15; ++trial) {
    const auto occ = testing::random_variant_corpus(rng, 200);
    std::size_t prev = 0;
    for (double t : {1.0, 0.95, 0.9, 0.85, 0.8, 0.75, 0.7, 0.6, 0.5, 0.3, 0.0}) {
      ClusterConfig config;
      config.threshold = t;
      const auto n = cluster(occ, config).clusters.size();
      if (prev != 0) {
        EXPECT_LE(n, prev) << "threshold " << t;
      }
      prev = n;
    }
  }
}

TEST(Cluster, InvalidThreshold) {
  ClusterConfig config;
  config.threshold = 1.5;
  EXPECT_THROW(cluster({}, config), InvalidArgument);
  config.threshold = -0.1;
  EXPECT_THROW(config.validate(), InvalidArgument);
}

TEST(Cluster, EmptyInput) {
  const auto c = cluster({}, ClusterConfig{});
  EXPECT_TRUE(c.variants.empty());
  EXPECT_TRUE(c.clusters.empty());
  EXPECT_TRUE(merge(c).empty());
}

TEST(Merge, SumsCountsAndPicksMostFrequent) {
  auto occ = refs({"Kohn W, 1965, PHYS REV, V140, PA1133", "Kohn W, 1965, PHYS REV, V140, PA1133",
                   "Kohn W, 1965, PHYS REV, V140, PA1133", "KOHN W., 1965, PHYS REV, V140, PA1133",
                   "KOHN W., 1965, PHYS REV, V140, PA1133"});
  const auto aggs = merge(cluster(occ, ClusterConfig{}));
  ASSERT_EQ(aggs.size(), 1u);
  EXPECT_EQ(aggs[0].ncr, 5u);
  EXPECT_EQ(aggs[0].canonical.raw, "Kohn W, 1965, PHYS REV, V140, PA1133");
  ASSERT_EQ(aggs[0].variants.size(), 2u);
  EXPECT_EQ(aggs[0].variants[0].count, 3u);
  EXPECT_EQ(aggs[0].variants[1].count, 2u);
  EXPECT_EQ(aggs[0].key, normalize_cr(aggs[0].canonical));
}

TEST(Merge, Singleton) {
  const auto aggs = merge(cluster(refs({"Pugh SF, 1954, PHILOS MAG, V45, P823"}), ClusterConfig{}));
  ASSERT_EQ(aggs.size(), 1u);
  EXPECT_EQ(aggs[0].ncr, 1u);
  EXPECT_EQ(aggs[0].canonical.raw, "Pugh SF, 1954, PHILOS MAG, V45, P823");
}

TEST(Merge, TieBreakIsLexicographic) {
  // equal counts, equal keys: raw text decides
  const auto aggs = merge(cluster(refs({"Kohn W, 1965, PHYS REV", "KOHN W, 1965, PHYS REV"}),
                                  ClusterConfig{}));
  ASSERT_EQ(aggs.size(), 1u);
  EXPECT_EQ(aggs[0].canonical.raw, "KOHN W, 1965, PHYS REV");
}

TEST(Merge, ConservationAndInvariants) {
  std::mt19937_64 rng(200);
  for (int trial = 0; trial < 30; ++trial) {
    const auto occ = testing::random_variant_corpus(rng, 200);
    const auto aggs = merge(cluster(occ, ClusterConfig{}));
    std::size_t total = 0;
    for (const auto& a : aggs) {
      std::size_t sum = 0;
      bool canonical_is_member = false;
      ASSERT_FALSE(a.variants.empty());
      for (const auto& v : a.variants) {
        sum += v.count;
        canonical_is_member |= v.ref == a.canonical;
      }
      EXPECT_EQ(a.ncr, sum);
      EXPECT_TRUE(canonical_is_member);
      total += a.ncr;
    }
    EXPECT_EQ(total, occ.size());
  }
}

std::vector<AggregatedCR> with_counts(const std::vector<std::size_t>& counts) {
  std::vector<AggregatedCR> out;
  for (auto c : counts) {
    AggregatedCR a;
    a.ncr = c;
    a.cluster_id = out.size();
    out.push_back(a);
  }
  return out;
}

TEST(RemoveCr, Examples) {
  auto kept = remove_cr(with_counts({5, 99, 100, 250}), 0, 99);
  ASSERT_EQ(kept.size(), 2u);
  EXPECT_EQ(kept[0].ncr, 100u);
  EXPECT_EQ(kept[1].ncr, 250u);

  EXPECT_EQ(remove_cr(with_counts({1, 2, 3}), 0, 0).size(), 3u);
  EXPECT_TRUE(remove_cr(with_counts({1, 2, 3}), 0, 3).empty());
  EXPECT_THROW(remove_cr(with_counts({1}), 5, 4), InvalidArgument);
}

TEST(RemoveCr, OnlyRemoves) {
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<std::size_t> c(1, 300);
  std::vector<std::size_t> counts(200);
  for (auto& x : counts) x = c(rng);
  const auto in = with_counts(counts);
  const auto out = remove_cr(in, 0, 99);
  std::size_t j = 0;
  for (const auto& a : in) {
    if (a.ncr <= 99) continue;
    ASSERT_LT(j, out.size());
    EXPECT_EQ(out[j++], a);
  }
  EXPECT_EQ(j, out.size());
}

}  // namespace
}  // namespace rpys
