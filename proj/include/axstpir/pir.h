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

#ifndef AXSTPIR_PIR_H_
#define AXSTPIR_PIR_H_

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "axstpir/field.h"
#include "axstpir/model.h"

namespace axstpir {

// ---------------------------------------------------------------------------
// Storage
// ---------------------------------------------------------------------------

enum class ShareRole {
  kUnused,     // dropped database: stores nothing, never queried
  kNoisy,      // W_{1:K} + N_i
  kNoiseOnly,  // sum_i N_i, held by the largest-index member of a group
  kReplica,    // byte copy of another database's share, never queried
};

struct DatabaseStore {
  ShareRole role = ShareRole::kUnused;
  int group = -1;
  // kNoisy: which noise matrix N_i (0-based) is added.
  std::size_t noise_index = 0;
  // kReplica: database whose share is copied.
  std::size_t replica_of = 0;
  Matrix stored;  // K x L; empty for kUnused
};

// Per-database stored content. Group members appear in ascending index
// order; members 0..m-2 hold W + N_i and member m-1 holds sum_i N_i. The noise
// itself is not kept here.
struct StoragePlan {
  std::size_t num_messages = 0;
  std::size_t subpacket_length = 0;
  std::uint64_t modulus = 0;
  std::vector<std::vector<std::size_t>> groups;
  std::vector<DatabaseStore> databases;

  std::size_t num_databases() const { return databases.size(); }
};

// Yields one uniform noise symbol per call.
using NoiseSource = std::function<Symbol()>;

// Test-only record of the noise drawn while building storage:
// noise[group][i] is N_i of that group.
struct StorageWitness {
  std::vector<std::vector<Matrix>> noise;
};

// `messages` is K x L. Noise symbols are drawn group by group, matrix by
// matrix, in row-major order. Throws kGroupTooSmall for groups of size < 2.
StoragePlan BuildStorage(const Grouping& grouping, const Matrix& messages,
                         const PrimeField& field, const NoiseSource& noise,
                         StorageWitness* witness = nullptr);
StoragePlan BuildStorage(const Grouping& grouping, const Matrix& messages,
                         const PrimeField& field, Rng& rng,
                         StorageWitness* witness = nullptr);

// Appends a database holding a copy of `source`'s share; returns its index.
std::size_t AddReplica(StoragePlan& plan, std::size_t source);

// ---------------------------------------------------------------------------
// Queries
// ---------------------------------------------------------------------------

enum class Scheme {
  kPermutedSums,   // T = 1: i-sums over randomly permuted symbol indices
  kMdsPrecoded,    // 1 < T < g: precoded symbols with MDS-coded interference
};

// One message's contribution to a requested combination: coeffs . W_message.
struct QueryTerm {
  std::size_t message = 0;
  // 1-based display index, e.g. the 3 in "a3". Not sent to databases.
  std::size_t label = 0;
  std::vector<Symbol> coeffs;  // length L

  bool operator==(const QueryTerm&) const = default;
};

struct QueryRow {
  std::vector<QueryTerm> terms;
  bool operator==(const QueryRow&) const = default;
};

// The query sent (identically) to every member of one group.
struct GroupQuery {
  std::vector<QueryRow> rows;
  bool operator==(const GroupQuery&) const = default;
};

// How the user recovers one symbol of the desired message (T = 1) or one
// precoded desired symbol (T > 1).
struct DesiredSymbol {
  std::size_t group = 0;
  std::size_t row = 0;
  std::size_t position = 0;  // symbol of W_k (T = 1) / row of S_k (T > 1)
  enum class Interference { kNone, kSideRow, kCodeword } interference =
      Interference::kNone;
  // kSideRow: undesired-only row downloaded from another group.
  std::size_t side_group = 0;
  std::size_t side_row = 0;
  // kCodeword: position inside InterferenceCode `code`.
  std::size_t code = 0;
  std::size_t code_position = 0;
};

// T > 1: the undesired-only rows of one message type form the first Z
// positions of an MDS codeword whose remaining Y - Z positions are the
// interference inside the next block's desired sums.
struct InterferenceCode {
  std::vector<std::size_t> messages;  // the type
  std::size_t level = 0;              // index into QueryPlan::mds
  // (group, row) of codeword positions 0..Z-1.
  std::vector<std::pair<std::size_t, std::size_t>> known;
};

struct QueryPlan {
  Scheme scheme = Scheme::kPermutedSums;
  std::size_t desired = 0;  // k, 0-based
  std::size_t num_messages = 0;
  std::size_t num_groups = 0;
  std::size_t collusion = 1;
  std::size_t subpacket_length = 0;
  std::vector<GroupQuery> group_queries;

  // kPermutedSums: permutations[m][i] is the symbol of W_m standing at
  // position i of the user's private order.
  std::vector<std::vector<std::size_t>> permutations;
  // kMdsPrecoded: random invertible L x L precoders, one per message, and one
  // MDS generator per level 1..K-1.
  std::vector<Matrix> precoders;
  std::vector<MdsGenerator> mds;
  std::vector<InterferenceCode> codes;

  std::vector<DesiredSymbol> recipe;

  std::size_t rows_per_group() const {
    return group_queries.empty() ? 0 : group_queries[0].rows.size();
  }
};

// Instances of each i-sum type per group in block i (1-based):
// (g - T)^(i-1) * T^(K-i). For T = 1 this is (g - 1)^(i-1).
std::size_t InstancesPerType(std::size_t g, std::size_t t, std::size_t k,
                             std::size_t block);

// All i-subsets of {0..K-1} in lexicographic order.
std::vector<std::vector<std::size_t>> SumTypes(std::size_t num_messages,
                                               std::size_t size);

// T = 1. Requires params.subpacket_length == g^K (kSubpacketMismatch).
QueryPlan GenerateQueriesT1(const SystemParams& params,
                            const Grouping& grouping, std::size_t desired,
                            Rng& rng);
// Same with the permutations supplied (one per message, each of length L).
QueryPlan GenerateQueriesT1(const SystemParams& params,
                            const Grouping& grouping, std::size_t desired,
                            std::vector<std::vector<std::size_t>> permutations);

// 1 < T < g (kTRangeViolation otherwise).
QueryPlan GenerateQueriesTpir(const SystemParams& params,
                              const Grouping& grouping, std::size_t desired,
                              Rng& rng);
QueryPlan GenerateQueriesTpir(const SystemParams& params,
                              const Grouping& grouping, std::size_t desired,
                              std::vector<Matrix> precoders);

// Picks the scheme from params.collusion.
QueryPlan GenerateQueries(const SystemParams& params, const Grouping& grouping,
                          std::size_t desired, Rng& rng);

// "a1", "a3+b2", ... for display. Messages are lettered a, b, c, ...
std::string RenderRow(const QueryRow& row);

// ---------------------------------------------------------------------------
// Answers and decoding
// ---------------------------------------------------------------------------

// Deterministic reply of database `db` to its group's query.
// Throws kUngroupedDatabaseQueried for dropped/replica databases.
std::vector<Symbol> Answer(std::size_t db, const StoragePlan& storage,
                           const QueryPlan& plan);

struct Transcript {
  QueryPlan plan;
  // answers[n] is empty for databases that were not queried.
  std::vector<std::vector<Symbol>> answers;
  std::vector<Symbol> decoded;
  std::vector<std::size_t> group_downloads;
  std::size_t total_download = 0;
};

// Queries every grouped database.
std::vector<std::vector<Symbol>> CollectAnswers(const StoragePlan& storage,
                                                const QueryPlan& plan);

// Recovers the L symbols of W_k. Throws kInconsistentAnswers if a grouped
// database's answer is missing, has the wrong length or leaves F_q.
std::vector<Symbol> Decode(const std::vector<std::vector<Symbol>>& answers,
                           const StoragePlan& storage, const QueryPlan& plan,
                           const PrimeField& field);

struct DownloadCounts {
  std::vector<std::size_t> per_group;
  std::size_t total = 0;
};

DownloadCounts CountDownloads(const Transcript& transcript,
                              const StoragePlan& storage);

// One retrieval round: generate queries, answer, decode, count.
Transcript Retrieve(const SystemParams& params, const Grouping& grouping,
                    const StoragePlan& storage, std::size_t desired, Rng& rng);

// Messages longer than one subpacket: `messages` is K x (s * L). Each
// L-symbol subpacket gets its own storage and query randomness.
struct MultiRetrieval {
  std::vector<Symbol> decoded;
  std::size_t total_download = 0;
  std::size_t subpackets = 0;
};
MultiRetrieval RetrieveMessage(const SystemParams& params,
                               const Grouping& grouping,
                               const Matrix& messages, std::size_t desired,
                               Rng& rng);

}  // namespace axstpir

#endif  // AXSTPIR_PIR_H_
