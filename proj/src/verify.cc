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

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "axstpir/error.h"
#include "axstpir/grouping.h"

namespace axstpir {

LinearStorageMap ExtractStorageMap(const StoragePlan& plan, DbMask link) {
  const std::size_t symbols = plan.num_messages * plan.subpacket_length;
  std::vector<std::size_t> noise_offset(plan.groups.size() + 1, 0);
  for (std::size_t g = 0; g < plan.groups.size(); ++g) {
    noise_offset[g + 1] =
        noise_offset[g] + (plan.groups[g].size() - 1) * symbols;
  }
  std::vector<std::size_t> members;
  for (std::size_t db : MembersOf(link)) {
    if (db < plan.num_databases()) members.push_back(db);
  }

  LinearStorageMap map{Matrix(members.size() * symbols, symbols),
                       Matrix(members.size() * symbols, noise_offset.back())};
  for (std::size_t i = 0; i < members.size(); ++i) {
    const DatabaseStore* store = &plan.databases[members[i]];
    if (store->role == ShareRole::kReplica) {
      store = &plan.databases[store->replica_of];
    }
    if (store->role == ShareRole::kUnused) continue;
    const std::size_t base = noise_offset[store->group];
    const std::size_t size = plan.groups[store->group].size();
    for (std::size_t s = 0; s < symbols; ++s) {
      const std::size_t row = i * symbols + s;
      if (store->role == ShareRole::kNoisy) {
        map.message_coeffs.at(row, s) = 1;
        map.noise_coeffs.at(row, base + store->noise_index * symbols + s) = 1;
      } else {
        for (std::size_t j = 0; j + 1 < size; ++j) {
          map.noise_coeffs.at(row, base + j * symbols + s) = 1;
        }
      }
    }
  }
  return map;
}

bool SecurityRankCheck(const StoragePlan& plan, DbMask link) {
  const PrimeField field(plan.modulus);
  const LinearStorageMap map = ExtractStorageMap(plan, link);
  const Matrix& a = map.message_coeffs;
  const Matrix& b = map.noise_coeffs;
  // Only noise columns that occur matter for the column space.
  std::vector<std::size_t> used;
  for (std::size_t c = 0; c < b.cols(); ++c) {
    for (std::size_t r = 0; r < b.rows(); ++r) {
      if (b.at(r, c) != 0) {
        used.push_back(c);
        break;
      }
    }
  }
  Matrix noise(b.rows(), used.size());
  Matrix joint(b.rows(), used.size() + a.cols());
  for (std::size_t r = 0; r < b.rows(); ++r) {
    for (std::size_t c = 0; c < used.size(); ++c) {
      noise.at(r, c) = b.at(r, used[c]);
      joint.at(r, c) = b.at(r, used[c]);
    }
    for (std::size_t c = 0; c < a.cols(); ++c) {
      joint.at(r, used.size() + c) = a.at(r, c);
    }
  }
  return Rank(field, joint) == Rank(field, noise);
}

namespace {

// Digits of `index` in base q, least significant first.
void Digits(std::uint64_t index, std::uint64_t q, std::vector<Symbol>& out) {
  for (Symbol& d : out) {
    d = index % q;
    index /= q;
  }
}

std::uint64_t CheckedPow(std::uint64_t base, std::size_t exp,
                         std::uint64_t cap) {
  std::uint64_t v = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (v > cap / base) return cap + 1;
    v *= base;
  }
  return v;
}

}  // namespace

MiResult SecurityMiBruteforce(const Grouping& grouping,
                              std::size_t num_messages,
                              std::size_t subpacket_length,
                              const PrimeField& field, DbMask link,
                              std::uint64_t max_states) {
  const std::uint64_t q = field.modulus();
  const std::size_t symbols = num_messages * subpacket_length;

  // Groups disjoint from the link contribute independent noise only.
  std::vector<std::vector<std::size_t>> touched;
  for (const auto& group : grouping.groups) {
    if ((MaskOf(group) & link) != 0) touched.push_back(group);
  }
  const Grouping sub = Grouping::Make(grouping.num_databases, touched);
  std::size_t noise_symbols = 0;
  for (const auto& group : touched) noise_symbols += (group.size() - 1) * symbols;

  const std::uint64_t message_states = CheckedPow(q, symbols, max_states);
  const std::uint64_t noise_states = CheckedPow(q, noise_symbols, max_states);
  if (message_states > max_states || noise_states > max_states ||
      message_states * noise_states > max_states) {
    throw Error(ErrorCode::kStateSpaceTooLarge,
                "exhaustive enumeration exceeds " + std::to_string(max_states) +
                    " states");
  }

  const std::vector<std::size_t> viewers = MembersOf(link);
  std::vector<Symbol> w(symbols), z(noise_symbols);
  // view -> count, one histogram per message assignment.
  std::vector<std::map<std::vector<Symbol>, std::uint64_t>> by_message(
      message_states);
  std::map<std::vector<Symbol>, std::uint64_t> marginal;
  for (std::uint64_t wi = 0; wi < message_states; ++wi) {
    Digits(wi, q, w);
    Matrix messages(num_messages, subpacket_length);
    for (std::size_t s = 0; s < symbols; ++s) {
      messages.at(s / subpacket_length, s % subpacket_length) = w[s];
    }
    for (std::uint64_t zi = 0; zi < noise_states; ++zi) {
      Digits(zi, q, z);
      std::size_t cursor = 0;
      const StoragePlan plan = BuildStorage(
          sub, messages, field, [&] { return z[cursor++]; });
      std::vector<Symbol> view;
      for (std::size_t db : viewers) {
        const Matrix& stored = plan.databases[db].stored;
        for (std::size_t r = 0; r < stored.rows(); ++r) {
          for (std::size_t c = 0; c < stored.cols(); ++c) {
            view.push_back(stored.at(r, c));
          }
        }
        view.push_back(q);  // separator; outside F_q
      }
      ++by_message[wi][view];
      ++marginal[view];
    }
  }

  MiResult result;
  result.states = message_states * noise_states;
  result.independent = std::all_of(
      by_message.begin(), by_message.end(),
      [&](const auto& h) { return h == by_message.front(); });
  // I(W; V) = sum p(w, v) log2( p(w, v) / (p(w) p(v)) ), p(w) = 1/|W|.
  const double total = static_cast<double>(result.states);
  double mi = 0.0;
  for (const auto& hist : by_message) {
    for (const auto& [view, count] : hist) {
      const double joint = count / total;
      const double pv = marginal.at(view) / total;
      mi += joint * std::log2(joint / (pv / message_states));
    }
  }
  result.mutual_information_bits = std::max(0.0, mi);
  return result;
}

namespace {

// What a coalition sees: for each of its databases the rows of its group's
// query (message ids and coefficient vectors). Labels are user-side only.
using View = std::vector<std::vector<std::pair<std::size_t, std::vector<Symbol>>>>;

View ObservedView(const QueryPlan& plan, const Grouping& grouping,
                  const std::vector<std::size_t>& colluding) {
  View view;
  for (std::size_t db : colluding) {
    const int g = grouping.GroupOf(db);
    if (g < 0) {
      view.emplace_back();  // dropped databases receive nothing
      continue;
    }
    for (const QueryRow& row : plan.group_queries[g].rows) {
      std::vector<std::pair<std::size_t, std::vector<Symbol>>> terms;
      for (const QueryTerm& t : row.terms) terms.emplace_back(t.message, t.coeffs);
      view.push_back(std::move(terms));
    }
  }
  return view;
}

std::vector<std::vector<std::size_t>> Structure(const View& view) {
  std::vector<std::vector<std::size_t>> out;
  for (const auto& row : view) {
    std::vector<std::size_t> messages;
    for (const auto& term : row) messages.push_back(term.first);
    out.push_back(std::move(messages));
  }
  return out;
}

std::vector<std::vector<Symbol>> Projection(const View& view, std::size_t m) {
  std::vector<std::vector<Symbol>> out;
  for (const auto& row : view) {
    for (const auto& term : row) {
      if (term.first == m) out.push_back(term.second);
    }
  }
  return out;
}

using Histogram = std::map<std::vector<std::vector<Symbol>>, std::uint64_t>;

// Two histograms describe the same distribution.
bool SameLaw(const Histogram& a, std::uint64_t total_a, const Histogram& b,
             std::uint64_t total_b) {
  if (a.size() != b.size()) return false;
  for (const auto& [key, count] : a) {
    auto it = b.find(key);
    if (it == b.end()) return false;
    if (static_cast<unsigned __int128>(count) * total_b !=
        static_cast<unsigned __int128>(it->second) * total_a) {
      return false;
    }
  }
  return true;
}

std::vector<std::size_t> Identity(std::size_t n) {
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  return p;
}

// Calls fn(perm) for every permutation of [0, n).
template <typename Fn>
void ForEachPermutation(std::size_t n, Fn&& fn) {
  std::vector<std::size_t> p = Identity(n);
  do {
    fn(p);
  } while (std::next_permutation(p.begin(), p.end()));
}

// Calls fn(perm) once for every injective map positions -> [0, n), extended
// to a full permutation by filling the other positions in ascending order.
template <typename Fn>
void ForEachInjection(std::size_t n, const std::vector<std::size_t>& positions,
                      Fn&& fn) {
  std::vector<std::size_t> image(positions.size());
  std::vector<bool> used(n, false);
  std::vector<std::size_t> perm(n);
  auto recurse = [&](auto&& self, std::size_t depth) -> void {
    if (depth == positions.size()) {
      std::vector<bool> is_pos(n, false);
      for (std::size_t i = 0; i < positions.size(); ++i) {
        perm[positions[i]] = image[i];
        is_pos[positions[i]] = true;
      }
      std::size_t next_free = 0;
      for (std::size_t i = 0; i < n; ++i) {
        if (is_pos[i]) continue;
        while (used[next_free]) ++next_free;
        perm[i] = next_free++;
      }
      fn(perm);
      return;
    }
    for (std::size_t v = 0; v < n; ++v) {
      if (used[v]) continue;
      used[v] = true;
      image[depth] = v;
      self(self, depth + 1);
      used[v] = false;
    }
  };
  recurse(recurse, 0);
}

}  // namespace

PrivacyResult PrivacyBruteforceT1(const SystemParams& params,
                                  const Grouping& grouping,
                                  const std::vector<std::size_t>& colluding,
                                  std::uint64_t max_states) {
  const std::size_t k = params.num_messages;
  const std::size_t length = params.subpacket_length;
  PrivacyResult result;
  if (k == 1) {
    result.is_private = true;
    result.method = "single message";
    return result;
  }

  std::uint64_t per_message = 1;
  for (std::size_t i = 2; i <= length; ++i) per_message *= i;
  const std::uint64_t joint = CheckedPow(per_message, k, max_states);

  auto view_for = [&](std::size_t desired,
                      std::vector<std::vector<std::size_t>> perms) {
    return ObservedView(
        GenerateQueriesT1(params, grouping, desired, std::move(perms)),
        grouping, colluding);
  };

  if (joint <= max_states) {
    result.method = "joint permutation enumeration";
    std::vector<Histogram> laws(k);
    for (std::size_t desired = 0; desired < k; ++desired) {
      // Odometer over K independent permutations.
      std::vector<std::vector<std::size_t>> all;
      ForEachPermutation(length, [&](const auto& p) { all.push_back(p); });
      std::vector<std::size_t> digit(k, 0);
      while (true) {
        std::vector<std::vector<std::size_t>> perms;
        for (std::size_t m = 0; m < k; ++m) perms.push_back(all[digit[m]]);
        View v = view_for(desired, std::move(perms));
        std::vector<std::vector<Symbol>> key;
        for (auto& row : v) {
          for (auto& term : row) {
            key.push_back({term.first});
            key.push_back(std::move(term.second));
          }
          key.push_back({});
        }
        ++laws[desired][key];
        ++result.enumerated;
        std::size_t i = 0;
        while (i < k && ++digit[i] == all.size()) digit[i++] = 0;
        if (i == k) break;
      }
    }
    result.is_private = true;
    for (std::size_t d = 1; d < k; ++d) {
      if (laws[d] != laws[0]) result.is_private = false;
    }
    return result;
  }

  result.method = "per-message permutation enumeration";
  std::vector<std::vector<std::vector<std::size_t>>> structure(k);
  // laws[desired][m] and their totals.
  std::vector<std::vector<Histogram>> laws(k, std::vector<Histogram>(k));
  std::vector<std::vector<std::uint64_t>> totals(
      k, std::vector<std::uint64_t>(k, 0));
  bool factorizes = true;
  for (std::size_t desired = 0; desired < k; ++desired) {
    const std::vector<std::vector<std::size_t>> identity(k, Identity(length));
    const View base = view_for(desired, identity);
    structure[desired] = Structure(base);
    for (std::size_t m = 0; m < k; ++m) {
      // Under the identity permutation a unit coefficient vector points at
      // the private position it stands for.
      std::vector<std::size_t> positions;
      for (const auto& coeffs : Projection(base, m)) {
        const auto it = std::find(coeffs.begin(), coeffs.end(), Symbol{1});
        const std::size_t pos = static_cast<std::size_t>(it - coeffs.begin());
        if (std::find(positions.begin(), positions.end(), pos) ==
            positions.end()) {
          positions.push_back(pos);
        }
      }
      ForEachInjection(length, positions, [&](const auto& perm) {
        auto perms = identity;
        perms[m] = perm;
        const View v = view_for(desired, std::move(perms));
        for (std::size_t other = 0; other < k; ++other) {
          if (other != m && Projection(v, other) != Projection(base, other)) {
            factorizes = false;
          }
        }
        ++laws[desired][m][Projection(v, m)];
        ++totals[desired][m];
        ++result.enumerated;
      });
    }
  }
  result.is_private = factorizes;
  for (std::size_t d = 1; d < k; ++d) {
    if (structure[d] != structure[0]) result.is_private = false;
    for (std::size_t m = 0; m < k; ++m) {
      if (!SameLaw(laws[d][m], totals[d][m], laws[0][m], totals[0][m])) {
        result.is_private = false;
      }
    }
  }
  return result;
}

PrivacyResult PrivacyOrbitCheckTpir(const SystemParams& params,
                                    const Grouping& grouping,
                                    const std::vector<std::size_t>& colluding,
                                    Rng& rng) {
  const PrimeField field(params.modulus);
  const std::size_t k = params.num_messages;
  PrivacyResult result;
  result.method = "precoder orbit invariants";
  std::vector<std::vector<std::vector<std::size_t>>> structure(k);
  std::vector<std::vector<Matrix>> kernels(k);
  for (std::size_t desired = 0; desired < k; ++desired) {
    const View v = ObservedView(
        GenerateQueriesTpir(params, grouping, desired, rng), grouping,
        colluding);
    structure[desired] = Structure(v);
    for (std::size_t m = 0; m < k; ++m) {
      const auto rows = Projection(v, m);
      Matrix observed(rows.size(), params.subpacket_length);
      for (std::size_t r = 0; r < rows.size(); ++r) {
        for (std::size_t c = 0; c < params.subpacket_length; ++c) {
          observed.at(r, c) = rows[r][c];
        }
      }
      kernels[desired].push_back(LeftKernel(field, observed));
    }
    ++result.enumerated;
  }
  result.is_private = true;
  for (std::size_t d = 1; d < k; ++d) {
    if (structure[d] != structure[0] || kernels[d] != kernels[0]) {
      result.is_private = false;
    }
  }
  return result;
}

bool DecodabilityCheck(const Transcript& transcript, const Matrix& messages) {
  const auto row = messages.row(transcript.plan.desired);
  return transcript.decoded.size() == row.size() &&
         std::equal(row.begin(), row.end(), transcript.decoded.begin());
}

RedundantMemberResult RedundantMemberEquivalence(
    std::size_t d, std::size_t n, std::size_t extra, std::size_t num_messages,
    std::size_t num_groups, std::uint64_t modulus, std::uint64_t seed) {
  if (d < 2 || n < 1 || extra >= d || num_groups < 2) {
    throw Error(ErrorCode::kInvalidParams,
                "need d >= 2, n >= 1, 0 <= extra < d and g >= 2");
  }
  const std::size_t core = d * n;
  const std::size_t total = core + extra + 2 * (num_groups - 1);

  // Augmented layout: databases 0..core+extra-1 form the big group.
  std::vector<std::vector<std::size_t>> groups(1);
  for (std::size_t i = 0; i < core + extra; ++i) groups[0].push_back(i);
  for (std::size_t j = 1; j < num_groups; ++j) {
    const std::size_t first = core + extra + 2 * (j - 1);
    groups.push_back({first, first + 1});
  }
  // Only the target group is trimmed; the pairs are smaller than d.
  const CommMatrix no_links = CommMatrix::FromLinks(total, {});
  groups[0] = TrimGroups(Grouping::Make(total, {groups[0]}), d, no_links)
                  .groups[0];
  const Grouping trimmed = Grouping::Make(total, groups);

  SystemParams params;
  params.num_databases = total;
  params.num_messages = num_messages;
  params.collusion = 1;
  params.modulus = modulus;
  params.seed = seed;
  params.subpacket_length = SubpacketLength(num_groups, num_messages);

  const PrimeField field(modulus);
  Rng rng(seed);
  const Matrix messages =
      RandomMatrix(num_messages, params.subpacket_length, field, rng);

  const StoragePlan trimmed_storage = BuildStorage(trimmed, messages, field, rng);
  // The extra databases copy the shares of the first `extra` members and
  // are never queried.
  StoragePlan augmented_storage = trimmed_storage;
  for (std::size_t i = 0; i < extra; ++i) {
    augmented_storage.databases[core + i] = DatabaseStore{
        ShareRole::kReplica, -1, 0, i, trimmed_storage.databases[i].stored};
  }

  RedundantMemberResult result;
  Rng query_rng(seed + 1);
  const Transcript t1 =
      Retrieve(params, trimmed, trimmed_storage, 0, query_rng);
  Rng query_rng2(seed + 1);
  const Transcript t2 =
      Retrieve(params, trimmed, augmented_storage, 0, query_rng2);
  result.trimmed_group_download = t1.group_downloads[0];
  result.augmented_group_download = t2.group_downloads[0];
  result.both_decode =
      DecodabilityCheck(t1, messages) && DecodabilityCheck(t2, messages);

  // Every coalition inside the big group whose distinct shares miss at least
  // one member, plus every singleton.
  bool secure = true;
  const std::size_t span = core + extra;
  for (DbMask coalition = 1; coalition < (DbMask{1} << span); ++coalition) {
    DbMask shares = 0;
    for (std::size_t db : MembersOf(coalition)) {
      shares |= DbMask{1} << (db < core ? db : db - core);
    }
    const bool proper = PopCount(shares) < static_cast<int>(core);
    const bool in_trimmed = (coalition >> core) == 0;
    if (!proper) continue;
    if (in_trimmed && !SecurityRankCheck(trimmed_storage, coalition)) {
      secure = false;
    }
    if (!SecurityRankCheck(augmented_storage, coalition)) secure = false;
  }
  for (std::size_t db = 0; db < total; ++db) {
    if (!SecurityRankCheck(augmented_storage, DbMask{1} << db)) secure = false;
  }
  result.both_secure = secure;
  return result;
}

}  // namespace axstpir
