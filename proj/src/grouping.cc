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

#include "axstpir/grouping.h"

#include <algorithm>
#include <bit>
#include <limits>
#include <string>
#include <unordered_map>
#include <vector>

#include "axstpir/error.h"

namespace axstpir {

bool FeasibilityCheck(const SystemParams& params, const CommMatrix& b) {
  const std::size_t x = b.max_link_size();
  return Binomial(params.num_databases, x) != Omega(b, x);
}

std::uint64_t GroupsUpperBound(const SystemParams& params,
                               const CommMatrix& b) {
  const std::size_t x = std::max<std::size_t>(b.max_link_size(), 2);
  std::uint64_t bound = 0;
  for (std::size_t i = 2; i <= x; ++i) {
    bound += Binomial(params.num_databases, i) - Omega(b, i);
  }
  return bound;
}

bool EscapesAllLinks(DbMask group, const CommMatrix& b) {
  for (DbMask link : b.links()) {
    if ((group & ~link) == 0) return false;
  }
  return true;
}

bool IsValidGrouping(const Grouping& grouping, const CommMatrix& b) {
  DbMask used = 0;
  for (const auto& group : grouping.groups) {
    if (group.size() < 2) return false;
    DbMask mask = 0;
    for (std::size_t db : group) {
      if (db >= grouping.num_databases || db >= b.num_databases()) return false;
      const DbMask bit = DbMask{1} << db;
      if ((mask & bit) != 0) return false;
      mask |= bit;
    }
    if ((used & mask) != 0) return false;
    used |= mask;
    if (!EscapesAllLinks(mask, b)) return false;
  }
  return true;
}

namespace {

bool LexLess(const std::vector<DbMask>& a, const std::vector<DbMask>& b) {
  // Groups compare as ascending member lists.
  for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) {
    if (a[i] == b[i]) continue;
    const auto ma = MembersOf(a[i]);
    const auto mb = MembersOf(b[i]);
    return std::lexicographical_compare(ma.begin(), ma.end(), mb.begin(),
                                        mb.end());
  }
  return a.size() < b.size();
}

class Solver {
 public:
  Solver(const CommMatrix& b, const SolverConfig& cfg)
      : b_(b), cfg_(cfg), n_(b.num_databases()) {
    BuildCandidates();
  }

  std::vector<DbMask> Run() {
    const DbMask all =
        n_ == 64 ? ~DbMask{0} : (DbMask{1} << n_) - 1;
    Best(all);
    return Reconstruct(all);
  }

  std::uint64_t nodes() const { return nodes_; }
  std::size_t candidate_count() const { return candidate_count_; }

 private:
  struct Entry {
    int groups = 0;
    int members = 0;
    // Index into by_min_[lowest], or -1 for "lowest database dropped".
    int choice = -1;
  };

  bool Valid(DbMask mask) const {
    return PopCount(mask) >= 2 && EscapesAllLinks(mask, b_);
  }

  // Inclusion-minimal valid groups, bucketed by their smallest member and
  // sorted lexicographically inside each bucket. Validity is upward closed,
  // so a valid set is minimal iff removing any single member breaks it.
  void BuildCandidates() {
    by_min_.assign(n_, {});
    const std::size_t max_size = std::min(n_, b_.max_link_size() + 1);
    std::vector<std::size_t> combo;
    for (std::size_t size = 2; size <= std::max<std::size_t>(max_size, 2);
         ++size) {
      combo.resize(size);
      for (std::size_t i = 0; i < size; ++i) combo[i] = i;
      while (true) {
        DbMask mask = MaskOf(combo);
        if (Valid(mask)) {
          bool minimal = true;
          if (size > 2) {
            for (std::size_t db : combo) {
              if (Valid(mask & ~(DbMask{1} << db))) {
                minimal = false;
                break;
              }
            }
          }
          if (minimal) {
            by_min_[combo[0]].push_back(mask);
            ++candidate_count_;
          }
        }
        // Next combination in lexicographic order.
        std::size_t i = size;
        while (i > 0 && combo[i - 1] == n_ - size + i - 1) --i;
        if (i == 0) break;
        ++combo[i - 1];
        for (std::size_t j = i; j < size; ++j) combo[j] = combo[j - 1] + 1;
      }
    }
    for (auto& bucket : by_min_) {
      std::sort(bucket.begin(), bucket.end(), [](DbMask a, DbMask b) {
        return LexLess({a}, {b});
      });
    }
  }

  std::vector<DbMask> Reconstruct(DbMask mask) const {
    std::vector<DbMask> out;
    while (mask != 0) {
      const std::size_t lowest = static_cast<std::size_t>(std::countr_zero(mask));
      const Entry& e = memo_.at(mask);
      if (e.choice < 0) {
        mask &= ~(DbMask{1} << lowest);
      } else {
        const DbMask group = by_min_[lowest][e.choice];
        out.push_back(group);
        mask &= ~group;
      }
    }
    return out;
  }

  // Returns true if (g, m, list(a)) ranks strictly before (g, m, list(b)).
  bool Better(int ga, int ma, DbMask rest_a, DbMask head_a, int gb, int mb,
              DbMask rest_b, DbMask head_b) const {
    if (ga != gb) return ga > gb;
    if (cfg_.tie_break == TieBreak::kMinTotalDatabases && ma != mb) {
      return ma < mb;
    }
    std::vector<DbMask> la, lb;
    if (head_a != 0) la.push_back(head_a);
    if (head_b != 0) lb.push_back(head_b);
    for (DbMask g : Reconstruct(rest_a)) la.push_back(g);
    for (DbMask g : Reconstruct(rest_b)) lb.push_back(g);
    return LexLess(la, lb);
  }

  const Entry& Best(DbMask mask) {
    if (auto it = memo_.find(mask); it != memo_.end()) return it->second;
    if (++nodes_ > cfg_.max_nodes) {
      throw Error(ErrorCode::kNodeBudgetExceeded,
                  "grouping search exceeded " + std::to_string(cfg_.max_nodes) +
                      " nodes");
    }
    Entry best;
    if (mask == 0) return memo_[mask] = best;

    const std::size_t lowest = static_cast<std::size_t>(std::countr_zero(mask));
    const int ceiling = PopCount(mask) / 2;
    bool have = false;
    DbMask best_rest = 0, best_head = 0;
    const auto& bucket = by_min_[lowest];
    for (std::size_t c = 0; c < bucket.size(); ++c) {
      const DbMask group = bucket[c];
      if ((group & ~mask) != 0) continue;
      const DbMask rest = mask & ~group;
      if (have && 1 + PopCount(rest) / 2 < best.groups) continue;
      const Entry sub = Best(rest);
      const int g = sub.groups + 1;
      const int m = sub.members + PopCount(group);
      if (!have || Better(g, m, rest, group, best.groups, best.members,
                          best_rest, best_head)) {
        best = Entry{g, m, static_cast<int>(c)};
        best_rest = rest;
        best_head = group;
        have = true;
        // Later candidates (and dropping) are lexicographically larger, so
        // nothing can beat a grouping that already meets the ceiling.
        if (g == ceiling &&
            (cfg_.tie_break == TieBreak::kLexSmallest || m == 2 * g)) {
          return memo_[mask] = best;
        }
      }
    }
    const DbMask rest = mask & ~(DbMask{1} << lowest);
    if (!have || PopCount(rest) / 2 >= best.groups) {
      const Entry sub = Best(rest);
      if (!have || Better(sub.groups, sub.members, rest, 0, best.groups,
                          best.members, best_rest, best_head)) {
        best = Entry{sub.groups, sub.members, -1};
      }
    }
    return memo_[mask] = best;
  }

  const CommMatrix& b_;
  const SolverConfig& cfg_;
  std::size_t n_;
  std::vector<std::vector<DbMask>> by_min_;
  std::size_t candidate_count_ = 0;
  std::unordered_map<DbMask, Entry> memo_;
  std::uint64_t nodes_ = 0;
};

}  // namespace

Grouping SolveGrouping(const SystemParams& params, const CommMatrix& b,
                       const SolverConfig& cfg, SolveStats* stats) {
  if (cfg.max_nodes < 1) {
    throw Error(ErrorCode::kInvalidParams, "max_nodes must be >= 1");
  }
  if (params.num_databases != b.num_databases()) {
    throw Error(ErrorCode::kInvalidParams,
                "communication matrix row count differs from N");
  }
  Solver solver(b, cfg);
  const std::vector<DbMask> masks = solver.Run();
  if (stats != nullptr) {
    stats->nodes = solver.nodes();
    stats->candidate_groups = solver.candidate_count();
  }
  if (masks.empty()) {
    throw Error(ErrorCode::kInfeasible,
                "no group of two or more databases escapes every link");
  }
  std::vector<std::vector<std::size_t>> groups;
  for (DbMask m : masks) groups.push_back(MembersOf(m));
  Grouping result = Grouping::Make(b.num_databases(), std::move(groups));

  if (result.num_groups() > b.num_databases() / 2 ||
      !IsValidGrouping(result, b)) {
    throw Error(ErrorCode::kAssertionFailure,
                "solver produced a grouping outside its bounds");
  }
  if (cfg.require_g_exceeds_t && result.num_groups() <= params.collusion) {
    throw Error(ErrorCode::kGNotGreaterThanT,
                "best grouping has g = " + std::to_string(result.num_groups()) +
                    " <= T = " + std::to_string(params.collusion));
  }
  return result;
}

Grouping TrimGroups(const Grouping& grouping, std::size_t d,
                    const CommMatrix& b) {
  if (d < 2) throw Error(ErrorCode::kInvalidParams, "need d >= 2");
  std::vector<std::vector<std::size_t>> trimmed;
  for (const auto& group : grouping.groups) {
    if (group.size() < d) {
      throw Error(ErrorCode::kInvalidParams, "group smaller than d");
    }
    const std::size_t keep = group.size() / d * d;
    std::vector<std::size_t> members(group.begin(), group.begin() + keep);
    if (!EscapesAllLinks(MaskOf(members), b)) {
      throw Error(ErrorCode::kTrimViolatesSecurity,
                  "trimmed group is covered by a link");
    }
    trimmed.push_back(std::move(members));
  }
  return Grouping::Make(grouping.num_databases, std::move(trimmed));
}

}  // namespace axstpir
