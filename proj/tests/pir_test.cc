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

#include "axstpir/pir.h"

#include <gtest/gtest.h>

#include <numeric>

#include "axstpir/error.h"
#include "axstpir/grouping.h"

namespace axstpir {
namespace {

using Sets = std::vector<std::vector<std::size_t>>;
using Table = std::vector<std::vector<std::string>>;

SystemParams Params(std::size_t n, std::size_t k, std::size_t t,
                    std::size_t g) {
  SystemParams p;
  p.num_databases = n;
  p.num_messages = k;
  p.collusion = t;
  p.subpacket_length = SubpacketLength(g, k);
  return p;
}

Grouping Pairs(std::size_t g, std::size_t extra = 0) {
  Sets groups;
  for (std::size_t i = 0; i < g; ++i) groups.push_back({2 * i, 2 * i + 1});
  return Grouping::Make(2 * g + extra, groups);
}

Table Render(const QueryPlan& plan) {
  Table out;
  for (const auto& q : plan.group_queries) {
    std::vector<std::string> rows;
    for (const auto& r : q.rows) rows.push_back(RenderRow(r));
    out.push_back(rows);
  }
  return out;
}

std::vector<std::vector<std::size_t>> IdentityPerms(std::size_t k,
                                                    std::size_t length) {
  std::vector<std::size_t> id(length);
  std::iota(id.begin(), id.end(), 0);
  return std::vector<std::vector<std::size_t>>(k, id);
}

TEST(Queries, TwoGroupsTwoMessages) {
  const Grouping g = Grouping::Make(4, {{0, 2}, {1, 3}});
  const QueryPlan plan =
      GenerateQueriesT1(Params(4, 2, 1, 2), g, 0, IdentityPerms(2, 4));
  EXPECT_EQ(Render(plan), (Table{{"a1", "b1", "a3+b2"}, {"a2", "b2", "a4+b1"}}));
}

TEST(Queries, ThreeGroupsTwoMessages) {
  const Grouping g = Grouping::Make(7, {{0, 3}, {1, 4}, {2, 5}});
  const QueryPlan plan =
      GenerateQueriesT1(Params(7, 2, 1, 3), g, 0, IdentityPerms(2, 9));
  EXPECT_EQ(Render(plan), (Table{{"a1", "b1", "a4+b2", "a7+b3"},
                                 {"a2", "b2", "a5+b1", "a8+b3"},
                                 {"a3", "b3", "a6+b1", "a9+b2"}}));
}

// With identity precoders the rendered labels are the row indices of the
// precoded symbols; interference labels are MDS codeword positions.
TEST(Queries, ThreeGroupsThreeMessagesTwoColluding) {
  const Grouping g = Pairs(3);
  std::vector<Matrix> s(3, Matrix::Identity(27));
  const QueryPlan plan = GenerateQueriesTpir(Params(6, 3, 2, 3), g, 0, s);
  EXPECT_EQ(Render(plan),
            (Table{{"a1", "a2", "a3", "a4", "b1", "b2", "b3", "b4", "c1", "c2",
                    "c3", "c4", "a13+b13", "a14+b14", "a19+c13", "a20+c14",
                    "b19+c19", "b20+c20", "a25+b25+c25"},
                   {"a5", "a6", "a7", "a8", "b5", "b6", "b7", "b8", "c5", "c6",
                    "c7", "c8", "a15+b15", "a16+b16", "a21+c15", "a22+c16",
                    "b21+c21", "b22+c22", "a26+b26+c26"},
                   {"a9", "a10", "a11", "a12", "b9", "b10", "b11", "b12", "c9",
                    "c10", "c11", "c12", "a17+b17", "a18+b18", "a23+c17",
                    "a24+c18", "b23+c23", "b24+c24", "a27+b27+c27"}}));
  ASSERT_EQ(plan.mds.size(), 2u);
  EXPECT_EQ(plan.mds[0].rows, 18u);
  EXPECT_EQ(plan.mds[0].cols, 12u);
  EXPECT_EQ(plan.mds[1].rows, 9u);
  EXPECT_EQ(plan.mds[1].cols, 6u);
}

TEST(Queries, EveryGroupSeesTheSameRowPattern) {
  Rng rng(4);
  const Grouping g = Pairs(3);
  for (std::size_t k = 0; k < 2; ++k) {
    const QueryPlan plan = GenerateQueriesT1(Params(6, 2, 1, 3), g, k, rng);
    for (const auto& q : plan.group_queries) {
      ASSERT_EQ(q.rows.size(), plan.rows_per_group());
      for (std::size_t r = 0; r < q.rows.size(); ++r) {
        EXPECT_EQ(q.rows[r].terms.size(),
                  plan.group_queries[0].rows[r].terms.size());
      }
    }
  }
}

TEST(Queries, RejectsWrongParameters) {
  Rng rng(1);
  const Grouping g = Pairs(2);
  SystemParams p = Params(4, 2, 1, 2);
  p.subpacket_length = 5;
  try {
    GenerateQueriesT1(p, g, 0, rng);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kSubpacketMismatch);
  }
  try {
    GenerateQueriesTpir(Params(4, 2, 2, 2), g, 0, rng);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kTRangeViolation);
  }
}

TEST(InstancesPerType, ClosedForm) {
  EXPECT_EQ(InstancesPerType(3, 2, 3, 1), 4u);
  EXPECT_EQ(InstancesPerType(3, 2, 3, 2), 2u);
  EXPECT_EQ(InstancesPerType(3, 2, 3, 3), 1u);
  EXPECT_EQ(InstancesPerType(4, 1, 3, 3), 9u);
  EXPECT_EQ(SumTypes(3, 2), (Sets{{0, 1}, {0, 2}, {1, 2}}));
}

TEST(Storage, NoiseSharesLayout) {
  const PrimeField f(65537);
  Rng rng(9);
  const Grouping g = Grouping::Make(5, {{0, 2, 4}, {1, 3}});
  const Matrix w = RandomMatrix(2, 4, f, rng);
  StorageWitness witness;
  const StoragePlan plan = BuildStorage(g, w, f, rng, &witness);
  ASSERT_EQ(witness.noise.size(), 2u);
  ASSERT_EQ(witness.noise[0].size(), 2u);
  for (std::size_t r = 0; r < 2; ++r) {
    for (std::size_t c = 0; c < 4; ++c) {
      const Symbol n1 = witness.noise[0][0].at(r, c);
      const Symbol n2 = witness.noise[0][1].at(r, c);
      EXPECT_EQ(plan.databases[0].stored.at(r, c), f.Add(w.at(r, c), n1));
      EXPECT_EQ(plan.databases[2].stored.at(r, c), f.Add(w.at(r, c), n2));
      EXPECT_EQ(plan.databases[4].stored.at(r, c), f.Add(n1, n2));
    }
  }
  EXPECT_EQ(plan.databases[4].role, ShareRole::kNoiseOnly);
  EXPECT_THROW(BuildStorage(Grouping::Make(3, {{0}}), w, f, rng), Error);
}

TEST(Answers, UngroupedDatabasesAreNotQueried) {
  const PrimeField f(65537);
  Rng rng(2);
  const Grouping g = Pairs(2, 1);
  const StoragePlan storage = BuildStorage(g, RandomMatrix(2, 4, f, rng), f, rng);
  const QueryPlan plan = GenerateQueries(Params(5, 2, 1, 2), g, 0, rng);
  try {
    Answer(4, storage, plan);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUngroupedDatabaseQueried);
  }
}

// Independent decoder: treat every message and noise symbol as an unknown,
// every answer symbol as one linear equation, eliminate, and read off each
// desired symbol if it is determined.
std::vector<Symbol> ReferenceDecode(const Transcript& t,
                                    const StoragePlan& storage,
                                    const PrimeField& f) {
  const std::size_t k = storage.num_messages;
  const std::size_t length = storage.subpacket_length;
  const std::size_t symbols = k * length;
  std::vector<std::size_t> noise_base;
  std::size_t unknowns = symbols;
  for (const auto& group : storage.groups) {
    noise_base.push_back(unknowns);
    unknowns += (group.size() - 1) * symbols;
  }
  std::vector<std::vector<Symbol>> rows;
  for (std::size_t db = 0; db < storage.num_databases(); ++db) {
    const DatabaseStore& s = storage.databases[db];
    if (s.role != ShareRole::kNoisy && s.role != ShareRole::kNoiseOnly) continue;
    const std::size_t m = storage.groups[s.group].size();
    const auto& query = t.plan.group_queries[s.group];
    for (std::size_t r = 0; r < query.rows.size(); ++r) {
      std::vector<Symbol> eq(unknowns + 1, 0);
      for (const QueryTerm& term : query.rows[r].terms) {
        for (std::size_t c = 0; c < length; ++c) {
          const std::size_t sym = term.message * length + c;
          if (s.role == ShareRole::kNoisy) {
            eq[sym] = f.Add(eq[sym], term.coeffs[c]);
            const std::size_t z =
                noise_base[s.group] + s.noise_index * symbols + sym;
            eq[z] = f.Add(eq[z], term.coeffs[c]);
          } else {
            for (std::size_t j = 0; j + 1 < m; ++j) {
              const std::size_t z = noise_base[s.group] + j * symbols + sym;
              eq[z] = f.Add(eq[z], term.coeffs[c]);
            }
          }
        }
      }
      eq[unknowns] = t.answers[db][r];
      rows.push_back(std::move(eq));
    }
  }
  // Reduced row echelon form of the augmented system.
  std::vector<int> pivot_row(unknowns, -1);
  std::size_t rank = 0;
  for (std::size_t col = 0; col < unknowns && rank < rows.size(); ++col) {
    std::size_t p = rank;
    while (p < rows.size() && rows[p][col] == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[rank]);
    const Symbol inv = f.Inv(rows[rank][col]);
    for (auto& v : rows[rank]) v = f.Mul(v, inv);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || rows[r][col] == 0) continue;
      const Symbol factor = rows[r][col];
      for (std::size_t c = 0; c <= unknowns; ++c) {
        rows[r][c] = f.Sub(rows[r][c], f.Mul(factor, rows[rank][c]));
      }
    }
    pivot_row[col] = static_cast<int>(rank++);
  }
  std::vector<Symbol> out;
  for (std::size_t c = 0; c < length; ++c) {
    const std::size_t col = t.plan.desired * length + c;
    if (pivot_row[col] < 0) return {};
    const auto& row = rows[pivot_row[col]];
    for (std::size_t other = 0; other < unknowns; ++other) {
      if (other != col && row[other] != 0) return {};
    }
    out.push_back(row[unknowns]);
  }
  return out;
}

struct Shape {
  std::size_t g;
  std::size_t t;
  std::size_t k;
};

class Retrieval : public ::testing::TestWithParam<Shape> {};

TEST_P(Retrieval, DecodesAndMatchesReference) {
  const auto [g, t, k] = GetParam();
  const PrimeField f(65537);
  Rng rng(100 + 10 * g + k);
  const Grouping grouping = Pairs(g, 1);
  const SystemParams params = Params(2 * g + 1, k, t, g);
  for (std::size_t desired = 0; desired < k; ++desired) {
    const Matrix w = RandomMatrix(k, params.subpacket_length, f, rng);
    const StoragePlan storage = BuildStorage(grouping, w, f, rng);
    const Transcript tr = Retrieve(params, grouping, storage, desired, rng);
    const auto row = w.row(desired);
    EXPECT_EQ(tr.decoded, std::vector<Symbol>(row.begin(), row.end()));
    EXPECT_EQ(ReferenceDecode(tr, storage, f), tr.decoded);
  }
}

INSTANTIATE_TEST_SUITE_P(
    Shapes, Retrieval,
    ::testing::Values(Shape{1, 1, 1}, Shape{1, 1, 2}, Shape{2, 1, 1},
                      Shape{2, 1, 2}, Shape{3, 1, 2}, Shape{2, 1, 3},
                      Shape{3, 2, 2}, Shape{3, 2, 3}, Shape{4, 2, 2},
                      Shape{4, 3, 2}));

// Per member: sum_i C(K, i) (g - T)^(i-1) T^(K-i), computed here directly.
std::size_t ClosedFormPerMember(std::size_t g, std::size_t t, std::size_t k) {
  std::size_t total = 0;
  for (std::size_t i = 1; i <= k; ++i) {
    std::size_t binom = 1;
    for (std::size_t j = 0; j < i; ++j) binom = binom * (k - j) / (j + 1);
    std::size_t term = binom;
    for (std::size_t j = 1; j < i; ++j) term *= g - t;
    for (std::size_t j = i; j < k; ++j) term *= t;
    total += term;
  }
  return total;
}

TEST(Downloads, MatchClosedForms) {
  const PrimeField f(65537);
  Rng rng(77);
  std::vector<Shape> shapes;
  for (std::size_t g : {2, 3, 4}) {
    for (std::size_t k : {1, 2, 3}) shapes.push_back({g, 1, k});
  }
  for (Shape s : {Shape{3, 2, 2}, Shape{3, 2, 3}, Shape{4, 2, 2}, Shape{4, 3, 2}}) {
    shapes.push_back(s);
  }
  for (const auto [g, t, k] : shapes) {
    // Mixed group sizes: the first group has three members.
    Sets groups = {{0, 1, 2}};
    for (std::size_t i = 1; i < g; ++i) groups.push_back({2 * i + 1, 2 * i + 2});
    const Grouping grouping = Grouping::Make(2 * g + 1, groups);
    const SystemParams params = Params(2 * g + 1, k, t, g);
    const StoragePlan storage = BuildStorage(
        grouping, RandomMatrix(k, params.subpacket_length, f, rng), f, rng);
    const Transcript tr = Retrieve(params, grouping, storage, k - 1, rng);
    const std::size_t per_member = ClosedFormPerMember(g, t, k);
    EXPECT_EQ(tr.plan.rows_per_group(), per_member);
    EXPECT_EQ(tr.group_downloads[0], 3 * per_member);
    EXPECT_EQ(tr.total_download, (2 * g + 1) * per_member);
    const DownloadCounts counts = CountDownloads(tr, storage);
    EXPECT_EQ(counts.total, tr.total_download);
  }
}

TEST(Downloads, SixDatabaseColludingExample) {
  EXPECT_EQ(ClosedFormPerMember(3, 2, 3), 19u);
  const PrimeField f(65537);
  Rng rng(8);
  const Grouping grouping = Pairs(3);
  const SystemParams params = Params(6, 3, 2, 3);
  const StoragePlan storage =
      BuildStorage(grouping, RandomMatrix(3, 27, f, rng), f, rng);
  const Transcript tr = Retrieve(params, grouping, storage, 0, rng);
  EXPECT_EQ(tr.total_download, 114u);
  EXPECT_EQ(tr.group_downloads, (std::vector<std::size_t>{38, 38, 38}));
}

TEST(Decode, RejectsStructurallyBrokenAnswers) {
  const PrimeField f(65537);
  Rng rng(3);
  const Grouping g = Pairs(2);
  const SystemParams params = Params(4, 2, 1, 2);
  const StoragePlan storage = BuildStorage(g, RandomMatrix(2, 4, f, rng), f, rng);
  const QueryPlan plan = GenerateQueries(params, g, 1, rng);
  auto answers = CollectAnswers(storage, plan);
  auto short_answers = answers;
  short_answers[0].pop_back();
  EXPECT_THROW(Decode(short_answers, storage, plan, f), Error);
  auto outside = answers;
  outside[1][0] = 65537;
  EXPECT_THROW(Decode(outside, storage, plan, f), Error);
}

TEST(Decode, CorruptedSymbolChangesResult) {
  const PrimeField f(65537);
  Rng rng(3);
  const Grouping g = Pairs(2);
  const SystemParams params = Params(4, 2, 1, 2);
  const Matrix w = RandomMatrix(2, 4, f, rng);
  const StoragePlan storage = BuildStorage(g, w, f, rng);
  const QueryPlan plan = GenerateQueries(params, g, 0, rng);
  auto answers = CollectAnswers(storage, plan);
  answers[0][0] = f.Add(answers[0][0], 1);
  const auto decoded = Decode(answers, storage, plan, f);
  const auto row = w.row(0);
  EXPECT_NE(decoded, std::vector<Symbol>(row.begin(), row.end()));
}

TEST(Retrieval, ReplicasAreNeverQueried) {
  const PrimeField f(65537);
  Rng rng(6);
  const Grouping g = Pairs(2);
  const Matrix w = RandomMatrix(2, 4, f, rng);
  StoragePlan storage = BuildStorage(g, w, f, rng);
  const std::size_t replica = AddReplica(storage, 1);
  EXPECT_EQ(storage.databases[replica].stored, storage.databases[1].stored);
  const Transcript tr = Retrieve(Params(4, 2, 1, 2), g, storage, 1, rng);
  EXPECT_TRUE(tr.answers[replica].empty());
  EXPECT_EQ(tr.total_download, 12u);
}

TEST(Retrieval, LongMessagesSplitIntoSubpackets) {
  const PrimeField f(65537);
  Rng rng(10);
  const Grouping g = Pairs(2);
  const Matrix w = RandomMatrix(2, 12, f, rng);
  const MultiRetrieval r = RetrieveMessage(Params(4, 2, 1, 2), g, w, 1, rng);
  EXPECT_EQ(r.subpackets, 3u);
  EXPECT_EQ(r.total_download, 36u);
  const auto row = w.row(1);
  EXPECT_EQ(r.decoded, std::vector<Symbol>(row.begin(), row.end()));
}

}  // namespace
}  // namespace axstpir
