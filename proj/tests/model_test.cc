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

#include "axstpir/model.h"

#include <gtest/gtest.h>

#include "axstpir/error.h"

namespace axstpir {
namespace {

ErrorCode CodeOf(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::kAssertionFailure;
}

// 0-based links of the six-database example with seven links.
CommMatrix SixDatabaseLinks() {
  return CommMatrix::FromLinks(6, {{1, 3}, {0, 2, 4}, {0, 2, 5}, {0, 3, 4},
                                   {0, 3, 5}, {1, 2, 4}, {1, 2, 5}});
}

TEST(Masks, RoundTrip) {
  const std::vector<std::size_t> members = {0, 3, 5, 63};
  EXPECT_EQ(MembersOf(MaskOf(members)), members);
  EXPECT_EQ(PopCount(MaskOf(members)), 4);
  EXPECT_EQ(MembersOf(0), std::vector<std::size_t>{});
}

TEST(Binomial, MatchesPascal) {
  for (std::size_t n = 0; n <= 30; ++n) {
    EXPECT_EQ(Binomial(n, 0), 1u);
    EXPECT_EQ(Binomial(n, n), 1u);
    for (std::size_t k = 1; k < n; ++k) {
      EXPECT_EQ(Binomial(n, k), Binomial(n - 1, k - 1) + Binomial(n - 1, k));
    }
  }
  EXPECT_EQ(Binomial(3, 5), 0u);
  EXPECT_EQ(Binomial(64, 32), 1832624140942590534ull);
}

TEST(IsPrime, SmallValuesByTrialDivision) {
  for (std::uint64_t q = 0; q < 2000; ++q) {
    bool prime = q >= 2;
    for (std::uint64_t d = 2; d * d <= q; ++d) prime = prime && q % d != 0;
    EXPECT_EQ(IsPrime(q), prime) << q;
  }
  EXPECT_TRUE(IsPrime(65537));
  EXPECT_TRUE(IsPrime(4294967291ull));
}

TEST(SystemParams, Validate) {
  SystemParams p;
  p.num_databases = 4;
  p.num_messages = 2;
  EXPECT_NO_THROW(p.Validate());
  using Edit = void (*)(SystemParams&);
  for (Edit bad : std::initializer_list<Edit>{
                   [](SystemParams& s) { s.num_databases = 1; },
                   [](SystemParams& s) { s.num_databases = 65; },
                   [](SystemParams& s) { s.num_messages = 0; },
                   [](SystemParams& s) { s.collusion = 0; },
                   [](SystemParams& s) { s.collusion = 5; },
                   [](SystemParams& s) { s.modulus = 65536; },
                   [](SystemParams& s) { s.modulus = 3; }}) {
    SystemParams q = p;
    bad(q);
    EXPECT_EQ(CodeOf([&] { q.Validate(); }), ErrorCode::kInvalidParams);
  }
}

TEST(CommMatrix, DenseAndLinkFormsAgree) {
  const CommMatrix dense = CommMatrix::FromDense({{1}, {1}, {0}, {0}});
  const CommMatrix links = CommMatrix::FromLinks(4, {{0, 1}});
  EXPECT_EQ(dense, links);
  EXPECT_EQ(links.ToDense(), (std::vector<std::vector<int>>{{1}, {1}, {0}, {0}}));
  EXPECT_EQ(links.max_link_size(), 2u);
  EXPECT_TRUE(links.entry(1, 0));
  EXPECT_FALSE(links.entry(2, 0));
}

TEST(CommMatrix, RejectsMalformedColumns) {
  EXPECT_EQ(CodeOf([] { CommMatrix::FromDense({{2}, {1}}); }),
            ErrorCode::kNonBinaryEntry);
  EXPECT_EQ(CodeOf([] { CommMatrix::FromDense({{1}, {0}, {0}}); }),
            ErrorCode::kSingletonLinkColumn);
  EXPECT_EQ(CodeOf([] { CommMatrix::FromDense({{0}, {0}, {0}}); }),
            ErrorCode::kEmptyColumn);
  EXPECT_EQ(CodeOf([] { CommMatrix::FromLinks(3, {{0, 3}}); }),
            ErrorCode::kNonBinaryEntry);
}

TEST(CommMatrix, CollapsesDuplicateColumns) {
  const CommMatrix b = CommMatrix::FromLinks(4, {{0, 1}, {1, 0}, {2, 3}});
  EXPECT_EQ(b.num_links(), 2u);
  EXPECT_EQ(b.duplicates_collapsed(), 1u);
}

TEST(CommMatrix, NoLinks) {
  const CommMatrix b = CommMatrix::FromLinks(5, {});
  EXPECT_EQ(b.max_link_size(), 0u);
  EXPECT_EQ(LambdaMax(b), 0u);
}

TEST(Counts, SixDatabaseExample) {
  const CommMatrix b = SixDatabaseLinks();
  EXPECT_EQ(b.max_link_size(), 3u);
  EXPECT_EQ(Omega(b, 2), 1u);
  EXPECT_EQ(Omega(b, 3), 6u);
  EXPECT_EQ(Omega(b, 4), 0u);
  // Column sums over the dense form, counted independently.
  const auto dense = b.ToDense();
  std::size_t lambda = 0;
  for (const auto& row : dense) {
    std::size_t missing = 0;
    for (int v : row) missing += v == 0;
    lambda = std::max(lambda, missing);
  }
  EXPECT_EQ(LambdaMax(b), lambda);
  EXPECT_EQ(LambdaMax(b), 4u);
}

TEST(Grouping, AccessorsAndOrdering) {
  const Grouping g = Grouping::Make(7, {{5, 2}, {3, 0}, {4, 1}});
  EXPECT_EQ(g.groups, (std::vector<std::vector<std::size_t>>{
                          {0, 3}, {1, 4}, {2, 5}}));
  EXPECT_EQ(g.num_groups(), 3u);
  EXPECT_EQ(g.total_members(), 6u);
  EXPECT_EQ(g.group_sizes(), (std::vector<std::size_t>{2, 2, 2}));
  EXPECT_EQ(g.dropped(), std::vector<std::size_t>{6});
  EXPECT_EQ(g.GroupOf(4), 1);
  EXPECT_EQ(g.GroupOf(6), -1);
}

TEST(Grouping, SimilarityMatrixShape) {
  const Grouping g = Grouping::Make(7, {{0, 3}, {1, 4}, {2, 5}});
  const auto s = g.SimilarityMatrix();
  ASSERT_EQ(s.size(), 4u);
  for (const auto& row : s) EXPECT_EQ(row.size(), 7u);
  EXPECT_EQ(s[0], (std::vector<int>{1, 0, 0, 1, 0, 0, 0}));
  EXPECT_EQ(s[3], std::vector<int>(7, 0));
}

TEST(SubpacketLength, PowersOfG) {
  EXPECT_EQ(SubpacketLength(2, 2), 4u);
  EXPECT_EQ(SubpacketLength(3, 3), 27u);
  EXPECT_EQ(SubpacketLength(5, 1), 5u);
}

}  // namespace
}  // namespace axstpir
