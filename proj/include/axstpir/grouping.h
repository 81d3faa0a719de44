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

#ifndef AXSTPIR_GROUPING_H_
#define AXSTPIR_GROUPING_H_

#include <cstddef>
#include <cstdint>

#include "axstpir/model.h"

namespace axstpir {

enum class TieBreak {
  // Among maximum-g groupings: fewest grouped databases, then the
  // lexicographically smallest group list.
  kMinTotalDatabases,
  // Among maximum-g groupings: lexicographically smallest group list.
  kLexSmallest,
};

struct SolverConfig {
  std::uint64_t max_nodes = 50'000'000;
  TieBreak tie_break = TieBreak::kMinTotalDatabases;
  bool require_g_exceeds_t = false;
};

// True iff not every X-subset of databases is a link, i.e.
// C(N, X) - Omega_X(B) != 0.
bool FeasibilityCheck(const SystemParams& params, const CommMatrix& b);

// sum_{i=2}^{X} [C(N, i) - Omega_i(B)], with X taken as 2 when B has no link
// of size >= 2. Groups of X + 1 databases escape every link but are not
// counted, so an optimal grouping that needs them can exceed this value; the
// solver does not prune with it.
std::uint64_t GroupsUpperBound(const SystemParams& params, const CommMatrix& b);

// Disjoint groups of size >= 2, each escaping every link.
bool IsValidGrouping(const Grouping& grouping, const CommMatrix& b);

// True iff `group` (as a mask) is not contained in any link.
bool EscapesAllLinks(DbMask group, const CommMatrix& b);

struct SolveStats {
  std::uint64_t nodes = 0;
  std::size_t candidate_groups = 0;
};

// Exact maximum-g grouping. Only inclusion-minimal groups are ever returned,
// since a valid proper subset of a group keeps g and shrinks sum(M_i).
//
// Throws kInfeasible (no group can be formed), kGNotGreaterThanT (when
// cfg.require_g_exceeds_t and the optimum is <= T) or kNodeBudgetExceeded.
Grouping SolveGrouping(const SystemParams& params, const CommMatrix& b,
                       const SolverConfig& cfg, SolveStats* stats = nullptr);

// Trims each group to floor(M_i / d) * d members, keeping the smallest
// indices. Throws kTrimViolatesSecurity when a trimmed group becomes covered
// by a link, kInvalidParams unless d >= 2 and every group has >= d members.
Grouping TrimGroups(const Grouping& grouping, std::size_t d,
                    const CommMatrix& b);

}  // namespace axstpir

#endif  // AXSTPIR_GROUPING_H_
