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

#ifndef AXSTPIR_MODEL_H_
#define AXSTPIR_MODEL_H_

#include <cstddef>
#include <cstdint>
#include <vector>

namespace axstpir {

// Databases are 0-indexed everywhere inside the library. Configuration files
// and reports use 1-based indices; the conversion happens in config.cc only.
using DbMask = std::uint64_t;
inline constexpr std::size_t kMaxDatabases = 64;

int PopCount(DbMask mask);
DbMask MaskOf(const std::vector<std::size_t>& members);
std::vector<std::size_t> MembersOf(DbMask mask);

std::uint64_t Binomial(std::size_t n, std::size_t k);
bool IsPrime(std::uint64_t q);

struct SystemParams {
  std::size_t num_databases = 0;  // N
  std::size_t num_messages = 0;   // K
  std::size_t collusion = 1;      // T
  std::size_t subpacket_length = 0;  // L; 0 until a grouping fixes g^K
  std::uint64_t modulus = 65537;     // q
  std::uint64_t seed = 0;

  // Throws Error(kInvalidParams) unless N >= 2, K >= 1, 1 <= T <= N,
  // q prime and q > N.
  void Validate() const;
};

// g^K, the number of symbols per message processed by one retrieval.
std::size_t SubpacketLength(std::size_t num_groups, std::size_t num_messages);

// The communication matrix B_X, stored column-wise as link sets. Immutable.
class CommMatrix {
 public:
  // Validates a dense N x M 0/1 matrix given row-major as `rows[n][m]`.
  // Duplicate columns are collapsed; the count is kept for reporting.
  static CommMatrix FromDense(const std::vector<std::vector<int>>& rows);
  // Same checks, from 0-based link member lists.
  static CommMatrix FromLinks(std::size_t num_databases,
                              const std::vector<std::vector<std::size_t>>& links);

  std::size_t num_databases() const { return num_databases_; }
  std::size_t num_links() const { return links_.size(); }
  const std::vector<DbMask>& links() const { return links_; }
  std::size_t duplicates_collapsed() const { return duplicates_collapsed_; }

  // X: the largest link size, 0 when there are no links.
  std::size_t max_link_size() const;
  bool entry(std::size_t db, std::size_t link) const {
    return (links_[link] >> db) & 1u;
  }
  std::vector<std::vector<int>> ToDense() const;

  bool operator==(const CommMatrix& other) const = default;

 private:
  CommMatrix(std::size_t n, std::vector<DbMask> links, std::size_t dups)
      : num_databases_(n), links_(std::move(links)), duplicates_collapsed_(dups) {}

  std::size_t num_databases_ = 0;
  std::vector<DbMask> links_;
  std::size_t duplicates_collapsed_ = 0;
};

// Omega_i: number of links of size exactly `weight`.
std::size_t Omega(const CommMatrix& b, std::size_t weight);

// lambda: max over databases of the number of links not containing it.
std::size_t LambdaMax(const CommMatrix& b);

// Disjoint database groups acting as super-databases. Members are sorted and
// groups are ordered by their smallest member. May describe an invalid
// grouping; see IsValidGrouping.
struct Grouping {
  std::size_t num_databases = 0;
  std::vector<std::vector<std::size_t>> groups;

  static Grouping Make(std::size_t num_databases,
                       std::vector<std::vector<std::size_t>> groups);

  std::size_t num_groups() const { return groups.size(); }
  std::size_t total_members() const;
  std::vector<std::size_t> group_sizes() const;
  // Databases that belong to no group.
  std::vector<std::size_t> dropped() const;
  // Group index of `db`, or -1.
  int GroupOf(std::size_t db) const;

  // The ceil(N/2) x N binary form; rows past num_groups() are zero.
  std::vector<std::vector<int>> SimilarityMatrix() const;

  bool operator==(const Grouping& other) const = default;
};

}  // namespace axstpir

#endif  // AXSTPIR_MODEL_H_
