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

#include <algorithm>
#include <bit>
#include <string>

#include "axstpir/error.h"

namespace axstpir {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNonBinaryEntry: return "NonBinaryEntry";
    case ErrorCode::kSingletonLinkColumn: return "SingletonLinkColumn";
    case ErrorCode::kEmptyColumn: return "EmptyColumn";
    case ErrorCode::kInvalidParams: return "InvalidParams";
    case ErrorCode::kInfeasible: return "Infeasible";
    case ErrorCode::kGNotGreaterThanT: return "GNotGreaterThanT";
    case ErrorCode::kNodeBudgetExceeded: return "NodeBudgetExceeded";
    case ErrorCode::kTrimViolatesSecurity: return "TrimViolatesSecurity";
    case ErrorCode::kDivideByZero: return "DivideByZero";
    case ErrorCode::kFieldTooSmall: return "FieldTooSmall";
    case ErrorCode::kGroupTooSmall: return "GroupTooSmall";
    case ErrorCode::kSubpacketMismatch: return "SubpacketMismatch";
    case ErrorCode::kTRangeViolation: return "TRangeViolation";
    case ErrorCode::kUngroupedDatabaseQueried: return "UngroupedDatabaseQueried";
    case ErrorCode::kInconsistentAnswers: return "InconsistentAnswers";
    case ErrorCode::kEmptyRange: return "EmptyRange";
    case ErrorCode::kStateSpaceTooLarge: return "StateSpaceTooLarge";
    case ErrorCode::kInvalidConfig: return "InvalidConfig";
    case ErrorCode::kAssertionFailure: return "AssertionFailure";
  }
  return "Unknown";
}

int PopCount(DbMask mask) { return std::popcount(mask); }

DbMask MaskOf(const std::vector<std::size_t>& members) {
  DbMask mask = 0;
  for (std::size_t m : members) mask |= DbMask{1} << m;
  return mask;
}

std::vector<std::size_t> MembersOf(DbMask mask) {
  std::vector<std::size_t> out;
  while (mask != 0) {
    out.push_back(static_cast<std::size_t>(std::countr_zero(mask)));
    mask &= mask - 1;
  }
  return out;
}

std::uint64_t Binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 result = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    result = result * (n - k + i) / i;
  }
  return static_cast<std::uint64_t>(result);
}

bool IsPrime(std::uint64_t q) {
  if (q < 2) return false;
  for (std::uint64_t d = 2; d * d <= q; ++d) {
    if (q % d == 0) return false;
  }
  return true;
}

void SystemParams::Validate() const {
  auto fail = [](const std::string& what) {
    throw Error(ErrorCode::kInvalidParams, what);
  };
  if (num_databases < 2) fail("need N >= 2");
  if (num_databases > kMaxDatabases) fail("N exceeds 64");
  if (num_messages < 1) fail("need K >= 1");
  if (collusion < 1 || collusion > num_databases) fail("need 1 <= T <= N");
  if (!IsPrime(modulus)) fail("q must be prime");
  if (modulus <= num_databases) fail("need q > N");
}

std::size_t SubpacketLength(std::size_t num_groups, std::size_t num_messages) {
  std::size_t length = 1;
  for (std::size_t i = 0; i < num_messages; ++i) length *= num_groups;
  return length;
}

CommMatrix CommMatrix::FromLinks(
    std::size_t num_databases,
    const std::vector<std::vector<std::size_t>>& links) {
  if (num_databases < 2 || num_databases > kMaxDatabases) {
    throw Error(ErrorCode::kInvalidParams,
                "communication matrix needs 2..64 rows");
  }
  std::vector<DbMask> masks;
  std::size_t dups = 0;
  for (std::size_t i = 0; i < links.size(); ++i) {
    DbMask mask = 0;
    for (std::size_t db : links[i]) {
      if (db >= num_databases) {
        throw Error(ErrorCode::kNonBinaryEntry,
                    "link " + std::to_string(i + 1) +
                        " names a database outside 1..N");
      }
      mask |= DbMask{1} << db;
    }
    const int weight = PopCount(mask);
    if (weight == 0) {
      throw Error(ErrorCode::kEmptyColumn,
                  "link " + std::to_string(i + 1) + " is empty");
    }
    if (weight == 1) {
      throw Error(ErrorCode::kSingletonLinkColumn,
                  "link " + std::to_string(i + 1) +
                      " has one database; single-database security is "
                      "implicit and must not be listed");
    }
    if (std::find(masks.begin(), masks.end(), mask) != masks.end()) {
      ++dups;
      continue;
    }
    masks.push_back(mask);
  }
  return CommMatrix(num_databases, std::move(masks), dups);
}

CommMatrix CommMatrix::FromDense(const std::vector<std::vector<int>>& rows) {
  const std::size_t n = rows.size();
  const std::size_t m = n == 0 ? 0 : rows[0].size();
  std::vector<std::vector<std::size_t>> links(m);
  for (std::size_t r = 0; r < n; ++r) {
    if (rows[r].size() != m) {
      throw Error(ErrorCode::kInvalidParams, "ragged communication matrix");
    }
    for (std::size_t c = 0; c < m; ++c) {
      const int v = rows[r][c];
      if (v != 0 && v != 1) {
        throw Error(ErrorCode::kNonBinaryEntry,
                    "entry (" + std::to_string(r + 1) + "," +
                        std::to_string(c + 1) + ") is " + std::to_string(v));
      }
      if (v == 1) links[c].push_back(r);
    }
  }
  return FromLinks(n, links);
}

std::size_t CommMatrix::max_link_size() const {
  std::size_t x = 0;
  for (DbMask link : links_) x = std::max<std::size_t>(x, PopCount(link));
  return x;
}

std::vector<std::vector<int>> CommMatrix::ToDense() const {
  std::vector<std::vector<int>> rows(num_databases_,
                                     std::vector<int>(links_.size(), 0));
  for (std::size_t c = 0; c < links_.size(); ++c) {
    for (std::size_t db : MembersOf(links_[c])) rows[db][c] = 1;
  }
  return rows;
}

std::size_t Omega(const CommMatrix& b, std::size_t weight) {
  return static_cast<std::size_t>(
      std::count_if(b.links().begin(), b.links().end(), [&](DbMask link) {
        return static_cast<std::size_t>(PopCount(link)) == weight;
      }));
}

std::size_t LambdaMax(const CommMatrix& b) {
  std::size_t best = 0;
  for (std::size_t db = 0; db < b.num_databases(); ++db) {
    std::size_t outside = 0;
    for (DbMask link : b.links()) {
      if (((link >> db) & 1u) == 0) ++outside;
    }
    best = std::max(best, outside);
  }
  return best;
}

Grouping Grouping::Make(std::size_t num_databases,
                        std::vector<std::vector<std::size_t>> groups) {
  for (auto& group : groups) std::sort(group.begin(), group.end());
  std::sort(groups.begin(), groups.end());
  return Grouping{num_databases, std::move(groups)};
}

std::size_t Grouping::total_members() const {
  std::size_t total = 0;
  for (const auto& group : groups) total += group.size();
  return total;
}

std::vector<std::size_t> Grouping::group_sizes() const {
  std::vector<std::size_t> sizes;
  for (const auto& group : groups) sizes.push_back(group.size());
  return sizes;
}

std::vector<std::size_t> Grouping::dropped() const {
  std::vector<std::size_t> out;
  for (std::size_t db = 0; db < num_databases; ++db) {
    if (GroupOf(db) < 0) out.push_back(db);
  }
  return out;
}

int Grouping::GroupOf(std::size_t db) const {
  for (std::size_t g = 0; g < groups.size(); ++g) {
    if (std::find(groups[g].begin(), groups[g].end(), db) != groups[g].end()) {
      return static_cast<int>(g);
    }
  }
  return -1;
}

std::vector<std::vector<int>> Grouping::SimilarityMatrix() const {
  const std::size_t rows = std::max((num_databases + 1) / 2, groups.size());
  std::vector<std::vector<int>> s(rows, std::vector<int>(num_databases, 0));
  for (std::size_t g = 0; g < groups.size(); ++g) {
    for (std::size_t db : groups[g]) s[g][db] = 1;
  }
  return s;
}

}  // namespace axstpir
