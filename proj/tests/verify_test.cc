// Copyright 2026 The axstpir Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "axstpir/verify.h"

#include <gtest/gtest.h>

#include <cmath>

#include "axstpir/error.h"
#include "axstpir/grouping.h"

namespace axstpir {
namespace {

using Sets = std::vector<std::vector<std::size_t>>;

SystemParams Params(std::size_t n, std::size_t k, std::size_t t,
                    std::size_t g) {
  SystemParams p;
  p.num_databases = n;
  p.num_messages = k;
  p.collusion = t;
  p.subpacket_length = SubpacketLength(g, k);
  return p;
}

const Grouping kFirst = Grouping::Make(4, {{0, 2}, {1, 3}});

StoragePlan FirstStorage(std::uint64_t seed) {
  const PrimeField f(65537);
  Rng rng(seed);
  return BuildStorage(kFirst, RandomMatrix(2, 4, f, rng), f, rng);
}

TEST(SecurityRank, FirstExampleSets) {
  const StoragePlan plan = FirstStorage(1);
  EXPECT_TRUE(SecurityRankCheck(plan, MaskOf({0, 1})));
  EXPECT_FALSE(SecurityRankCheck(plan, MaskOf({0, 2})));
  for (std::size_t db = 0; db < 4; ++db) {
    EXPECT_TRUE(SecurityRankCheck(plan, DbMask{1} << db));
  }
  EXPECT_TRUE(SecurityRankCheck(plan, 0));
}

TEST(SecurityRank, MapShapes) {
  const StoragePlan plan = FirstStorage(2);
  const LinearStorageMap map = ExtractStorageMap(plan, MaskOf({0, 3}));
  EXPECT_EQ(map.message_coeffs.rows(), 16u);
  EXPECT_EQ(map.message_coeffs.cols(), 8u);
  EXPECT_EQ(map.noise_coeffs.rows(), 16u);
  EXPECT_EQ(map.noise_coeffs.cols(), 16u);
}

TEST(SecurityMi, FirstExampleOverF2) {
  const PrimeField f(2);
  const MiResult link = SecurityMiBruteforce(kFirst, 1, 1, f, MaskOf({0, 1}));
  EXPECT_TRUE(link.independent);
  EXPECT_EQ(link.mutual_information_bits, 0.0);
  EXPECT_EQ(link.states, 8u);
  const MiResult group = SecurityMiBruteforce(kFirst, 1, 1, f, MaskOf({0, 2}));
  EXPECT_FALSE(group.independent);
  EXPECT_NEAR(group.mutual_information_bits, 1.0, 1e-12);
  const PrimeField f3(3);
  const MiResult bigger = SecurityMiBruteforce(kFirst, 2, 1, f3, MaskOf({1, 3}));
  EXPECT_NEAR(bigger.mutual_information_bits, 2 * std::log2(3.0), 1e-9);
}

TEST(SecurityMi, RefusesHugeStateSpaces) {
  const PrimeField f(3);
  try {
    SecurityMiBruteforce(kFirst, 2, 4, f, MaskOf({0, 1}), 1000);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kStateSpaceTooLarge);
  }
}

TEST(SecurityMi, AgreesWithRankOnRandomTinyInstances) {
  Rng rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 3 + rng.Uniform(3);
    const std::uint64_t q = rng.Uniform(2) ? 2 : 3;
    const PrimeField f(q);
    // Random disjoint groups of size 2 or 3.
    const auto order = rng.Permutation(n);
    Sets groups;
    std::size_t i = 0;
    while (n - i >= 2) {
      const std::size_t size = (n - i >= 3 && rng.Uniform(2)) ? 3 : 2;
      groups.emplace_back(order.begin() + i, order.begin() + i + size);
      i += size;
    }
    const Grouping grouping = Grouping::Make(n, groups);
    const DbMask link = rng.Uniform(DbMask{1} << n);
    const MiResult mi = SecurityMiBruteforce(grouping, 1, 1, f, link);
    const StoragePlan plan = BuildStorage(grouping, RandomMatrix(1, 1, f, rng), f, rng);
    EXPECT_EQ(mi.independent, SecurityRankCheck(plan, link)) << "trial " << trial;
    EXPECT_EQ(mi.independent, mi.mutual_information_bits == 0.0);
  }
}

TEST(Privacy, FirstExampleEveryDatabaseAndPair) {
  const SystemParams p = Params(4, 2, 1, 2);
  for (std::size_t db = 0; db < 4; ++db) {
    const PrivacyResult r = PrivacyBruteforceT1(p, kFirst, {db});
    EXPECT_TRUE(r.is_private);
    EXPECT_EQ(r.enumerated, 2u * 576u);
  }
  // Two members of one group still observe one group-level query.
  EXPECT_TRUE(PrivacyBruteforceT1(p, kFirst, {0, 2}).is_private);
}

TEST(Privacy, FactorizedEnumerationForNineSymbols) {
  const Grouping g = Grouping::Make(7, {{0, 3}, {1, 4}, {2, 5}});
  const SystemParams p = Params(7, 2, 1, 3);
  for (std::size_t db = 0; db < 7; ++db) {
    const PrivacyResult r = PrivacyBruteforceT1(p, g, {db});
    EXPECT_TRUE(r.is_private) << db;
  }
}

TEST(Privacy, SingleMessageIsTrivial) {
  EXPECT_TRUE(PrivacyBruteforceT1(Params(4, 1, 1, 2), kFirst, {0}).is_private);
}

TEST(Privacy, PrecodedSchemeOrbitCheck) {
  const Grouping g = Grouping::Make(6, {{0, 1}, {2, 3}, {4, 5}});
  const SystemParams p = Params(6, 3, 2, 3);
  Rng rng(5);
  for (std::size_t a = 0; a < 6; ++a) {
    for (std::size_t b = a + 1; b < 6; ++b) {
      EXPECT_TRUE(PrivacyOrbitCheckTpir(p, g, {a, b}, rng).is_private);
    }
  }
  const Grouping four = Grouping::Make(8, {{0, 1}, {2, 3}, {4, 5}, {6, 7}});
  EXPECT_TRUE(PrivacyOrbitCheckTpir(Params(8, 2, 3, 4), four, {0, 2, 4}, rng)
                  .is_private);
}

TEST(Decodability, ExactEquality) {
  const PrimeField f(65537);
  Rng rng(12);
  const SystemParams p = Params(4, 2, 1, 2);
  const Matrix w = RandomMatrix(2, 4, f, rng);
  const StoragePlan storage = BuildStorage(kFirst, w, f, rng);
  Transcript t = Retrieve(p, kFirst, storage, 1, rng);
  EXPECT_TRUE(DecodabilityCheck(t, w));
  t.answers[0][0] = f.Add(t.answers[0][0], 1);
  t.decoded = Decode(t.answers, storage, t.plan, f);
  EXPECT_FALSE(DecodabilityCheck(t, w));

  const Matrix zero(2, 4);
  const StoragePlan zero_storage = BuildStorage(kFirst, zero, f, rng);
  const Transcript z = Retrieve(p, kFirst, zero_storage, 0, rng);
  EXPECT_EQ(z.decoded, std::vector<Symbol>(4, 0));
}

TEST(RedundantMembers, SmallestConfigurationDownloadsSix) {
  const RedundantMemberResult r = RedundantMemberEquivalence(2, 1, 1, 2, 2, 65537, 1);
  EXPECT_EQ(r.trimmed_group_download, 6u);
  EXPECT_EQ(r.augmented_group_download, 6u);
  EXPECT_TRUE(r.ok());
}

TEST(RedundantMembers, Configurations) {
  for (auto [d, n, extra] : {std::tuple<std::size_t, std::size_t, std::size_t>{2, 1, 0},
                             {2, 2, 1}, {3, 1, 1}, {3, 1, 2}, {2, 3, 1}}) {
    const RedundantMemberResult r = RedundantMemberEquivalence(d, n, extra, 2, 2, 65537, 3);
    EXPECT_TRUE(r.ok()) << d << " " << n << " " << extra;
    EXPECT_EQ(r.trimmed_group_download, d * n * 3);
  }
  EXPECT_THROW(RedundantMemberEquivalence(2, 1, 2, 2, 2, 65537, 1), Error);
}

}  // namespace
}  // namespace axstpir
