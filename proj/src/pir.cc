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

#include <algorithm>
#include <map>
#include <string>
#include <utility>

#include "axstpir/error.h"

namespace axstpir {

// ---------------------------------------------------------------------------
// Storage
// ---------------------------------------------------------------------------

StoragePlan BuildStorage(const Grouping& grouping, const Matrix& messages,
                         const PrimeField& field, const NoiseSource& noise,
                         StorageWitness* witness) {
  StoragePlan plan;
  plan.num_messages = messages.rows();
  plan.subpacket_length = messages.cols();
  plan.modulus = field.modulus();
  plan.groups = grouping.groups;
  plan.databases.resize(grouping.num_databases);
  if (witness != nullptr) witness->noise.assign(grouping.num_groups(), {});

  for (std::size_t g = 0; g < grouping.num_groups(); ++g) {
    const auto& members = grouping.groups[g];
    if (members.size() < 2) {
      throw Error(ErrorCode::kGroupTooSmall,
                  "group " + std::to_string(g + 1) + " has fewer than 2 members");
    }
    Matrix noise_sum(messages.rows(), messages.cols());
    for (std::size_t i = 0; i + 1 < members.size(); ++i) {
      Matrix n_i(messages.rows(), messages.cols());
      for (std::size_t r = 0; r < n_i.rows(); ++r) {
        for (std::size_t c = 0; c < n_i.cols(); ++c) {
          n_i.at(r, c) = field.Reduce(noise());
        }
      }
      DatabaseStore& db = plan.databases[members[i]];
      db.role = ShareRole::kNoisy;
      db.group = static_cast<int>(g);
      db.noise_index = i;
      db.stored = Matrix(messages.rows(), messages.cols());
      for (std::size_t r = 0; r < n_i.rows(); ++r) {
        for (std::size_t c = 0; c < n_i.cols(); ++c) {
          db.stored.at(r, c) = field.Add(messages.at(r, c), n_i.at(r, c));
          noise_sum.at(r, c) = field.Add(noise_sum.at(r, c), n_i.at(r, c));
        }
      }
      if (witness != nullptr) witness->noise[g].push_back(std::move(n_i));
    }
    DatabaseStore& last = plan.databases[members.back()];
    last.role = ShareRole::kNoiseOnly;
    last.group = static_cast<int>(g);
    last.stored = std::move(noise_sum);
  }
  return plan;
}

StoragePlan BuildStorage(const Grouping& grouping, const Matrix& messages,
                         const PrimeField& field, Rng& rng,
                         StorageWitness* witness) {
  return BuildStorage(
      grouping, messages, field,
      [&rng, &field] { return rng.Uniform(field.modulus()); }, witness);
}

std::size_t AddReplica(StoragePlan& plan, std::size_t source) {
  DatabaseStore copy;
  copy.role = ShareRole::kReplica;
  copy.replica_of = source;
  copy.group = -1;
  copy.stored = plan.databases.at(source).stored;
  plan.databases.push_back(std::move(copy));
  return plan.databases.size() - 1;
}

// ---------------------------------------------------------------------------
// Query structure shared by both schemes
// ---------------------------------------------------------------------------

std::size_t InstancesPerType(std::size_t g, std::size_t t, std::size_t k,
                             std::size_t block) {
  std::size_t n = 1;
  for (std::size_t i = 1; i < block; ++i) n *= (g - t);
  for (std::size_t i = block; i < k; ++i) n *= t;
  return n;
}

std::vector<std::vector<std::size_t>> SumTypes(std::size_t num_messages,
                                               std::size_t size) {
  std::vector<std::vector<std::size_t>> out;
  if (size == 0 || size > num_messages) return out;
  std::vector<std::size_t> combo(size);
  for (std::size_t i = 0; i < size; ++i) combo[i] = i;
  while (true) {
    out.push_back(combo);
    std::size_t i = size;
    while (i > 0 && combo[i - 1] == num_messages - size + i - 1) --i;
    if (i == 0) break;
    ++combo[i - 1];
    for (std::size_t j = i; j < size; ++j) combo[j] = combo[j - 1] + 1;
  }
  return out;
}

namespace {

bool Contains(const std::vector<std::size_t>& type, std::size_t m) {
  return std::find(type.begin(), type.end(), m) != type.end();
}

std::vector<std::size_t> Without(const std::vector<std::size_t>& type,
                                 std::size_t m) {
  std::vector<std::size_t> out;
  for (std::size_t x : type) {
    if (x != m) out.push_back(x);
  }
  return out;
}

// Row layout common to every group: block-major, then type, then instance.
class RowLayout {
 public:
  RowLayout(std::size_t g, std::size_t t, std::size_t k) : g_(g), t_(t), k_(k) {
    std::size_t offset = 0;
    for (std::size_t block = 1; block <= k; ++block) {
      for (const auto& type : SumTypes(k, block)) {
        start_[type] = offset;
        types_.push_back(type);
        offset += InstancesPerType(g, t, k, block);
      }
    }
    rows_ = offset;
  }

  std::size_t rows() const { return rows_; }
  std::size_t Row(const std::vector<std::size_t>& type,
                  std::size_t instance) const {
    return start_.at(type) + instance;
  }
  std::size_t Instances(std::size_t block) const {
    return InstancesPerType(g_, t_, k_, block);
  }
  const std::vector<std::vector<std::size_t>>& types() const { return types_; }

 private:
  std::size_t g_, t_, k_;
  std::map<std::vector<std::size_t>, std::size_t> start_;
  std::vector<std::vector<std::size_t>> types_;
  std::size_t rows_ = 0;
};

void CheckCommon(const SystemParams& params, const Grouping& grouping,
                 std::size_t desired) {
  if (grouping.num_groups() == 0) {
    throw Error(ErrorCode::kInvalidParams, "grouping has no groups");
  }
  if (desired >= params.num_messages) {
    throw Error(ErrorCode::kInvalidParams, "desired index out of range");
  }
  const std::size_t expected =
      SubpacketLength(grouping.num_groups(), params.num_messages);
  if (params.subpacket_length != expected) {
    throw Error(ErrorCode::kSubpacketMismatch,
                "L = " + std::to_string(params.subpacket_length) +
                    " but g^K = " + std::to_string(expected));
  }
}

QueryTerm UnitTerm(std::size_t message, std::size_t symbol, std::size_t length) {
  QueryTerm term;
  term.message = message;
  term.label = symbol + 1;
  term.coeffs.assign(length, 0);
  term.coeffs[symbol] = 1;
  return term;
}

}  // namespace

// ---------------------------------------------------------------------------
// T = 1
// ---------------------------------------------------------------------------

QueryPlan GenerateQueriesT1(const SystemParams& params,
                            const Grouping& grouping, std::size_t desired,
                            Rng& rng) {
  std::vector<std::vector<std::size_t>> perms;
  for (std::size_t m = 0; m < params.num_messages; ++m) {
    perms.push_back(rng.Permutation(params.subpacket_length));
  }
  return GenerateQueriesT1(params, grouping, desired, std::move(perms));
}

QueryPlan GenerateQueriesT1(const SystemParams& params,
                            const Grouping& grouping, std::size_t desired,
                            std::vector<std::vector<std::size_t>> permutations) {
  CheckCommon(params, grouping, desired);
  if (params.collusion != 1) {
    throw Error(ErrorCode::kTRangeViolation, "permuted-sum scheme needs T = 1");
  }
  const std::size_t g = grouping.num_groups();
  const std::size_t k = params.num_messages;
  const std::size_t length = params.subpacket_length;
  if (permutations.size() != k) {
    throw Error(ErrorCode::kInvalidParams, "need one permutation per message");
  }
  for (const auto& p : permutations) {
    if (p.size() != length) {
      throw Error(ErrorCode::kSubpacketMismatch, "permutation length != L");
    }
  }

  const RowLayout layout(g, 1, k);
  QueryPlan plan;
  plan.scheme = Scheme::kPermutedSums;
  plan.desired = desired;
  plan.num_messages = k;
  plan.num_groups = g;
  plan.collusion = 1;
  plan.subpacket_length = length;
  plan.group_queries.assign(g, GroupQuery{std::vector<QueryRow>(layout.rows())});
  plan.permutations = std::move(permutations);

  // Positions in the user's private order, handed out per message.
  std::vector<std::size_t> next(k, 0);
  auto symbol = [&](std::size_t m) { return plan.permutations[m][next[m]++]; };

  // Index assignment runs block, type, instance, then group, so that the
  // fresh symbols of one instance are consecutive across groups.
  for (std::size_t block = 1; block <= k; ++block) {
    const std::size_t instances = layout.Instances(block);
    for (const auto& type : SumTypes(k, block)) {
      for (std::size_t inst = 0; inst < instances; ++inst) {
        for (std::size_t j = 0; j < g; ++j) {
          QueryRow& row = plan.group_queries[j].rows[layout.Row(type, inst)];
          if (!Contains(type, desired)) {
            for (std::size_t m : type) {
              row.terms.push_back(UnitTerm(m, symbol(m), length));
            }
            continue;
          }
          DesiredSymbol d;
          d.group = j;
          d.row = layout.Row(type, inst);
          d.position = symbol(desired);
          QueryTerm desired_term = UnitTerm(desired, d.position, length);
          if (block > 1) {
            // Side information: an undesired-only (block-1)-sum downloaded
            // from another group. Each such sum is reused once per group.
            const std::size_t prev = layout.Instances(block - 1);
            const std::size_t other = inst / prev;
            const std::size_t source_inst = inst % prev;
            const std::size_t source_group = other < j ? other : other + 1;
            const auto side_type = Without(type, desired);
            d.interference = DesiredSymbol::Interference::kSideRow;
            d.side_group = source_group;
            d.side_row = layout.Row(side_type, source_inst);
            row.terms =
                plan.group_queries[source_group].rows[d.side_row].terms;
          }
          row.terms.push_back(std::move(desired_term));
          std::sort(row.terms.begin(), row.terms.end(),
                    [](const QueryTerm& a, const QueryTerm& b) {
                      return a.message < b.message;
                    });
          plan.recipe.push_back(d);
        }
      }
    }
  }
  return plan;
}

// ---------------------------------------------------------------------------
// 1 < T < g
// ---------------------------------------------------------------------------

QueryPlan GenerateQueriesTpir(const SystemParams& params,
                              const Grouping& grouping, std::size_t desired,
                              Rng& rng) {
  const PrimeField field(params.modulus);
  std::vector<Matrix> precoders;
  for (std::size_t m = 0; m < params.num_messages; ++m) {
    precoders.push_back(RandomFullRank(params.subpacket_length, field, rng));
  }
  return GenerateQueriesTpir(params, grouping, desired, std::move(precoders));
}

QueryPlan GenerateQueriesTpir(const SystemParams& params,
                              const Grouping& grouping, std::size_t desired,
                              std::vector<Matrix> precoders) {
  const std::size_t g = grouping.num_groups();
  const std::size_t t = params.collusion;
  if (t < 2 || t >= g) {
    throw Error(ErrorCode::kTRangeViolation,
                "MDS-precoded scheme needs 1 < T < g (T = " + std::to_string(t) +
                    ", g = " + std::to_string(g) + ")");
  }
  CheckCommon(params, grouping, desired);
  const std::size_t k = params.num_messages;
  const std::size_t length = params.subpacket_length;
  const PrimeField field(params.modulus);
  if (precoders.size() != k) {
    throw Error(ErrorCode::kInvalidParams, "need one precoder per message");
  }
  for (const auto& s : precoders) {
    if (s.rows() != length || s.cols() != length) {
      throw Error(ErrorCode::kSubpacketMismatch, "precoder is not L x L");
    }
  }

  const RowLayout layout(g, t, k);
  QueryPlan plan;
  plan.scheme = Scheme::kMdsPrecoded;
  plan.desired = desired;
  plan.num_messages = k;
  plan.num_groups = g;
  plan.collusion = t;
  plan.subpacket_length = length;
  plan.group_queries.assign(g, GroupQuery{std::vector<QueryRow>(layout.rows())});
  plan.precoders = std::move(precoders);

  // Level l (1..K-1) codes the undesired l-sums of block l together with the
  // interference they cancel in block l+1: Z = g n_l known positions,
  // Y = Z + g n_{l+1}. Any T groups see exactly Z positions of each code.
  for (std::size_t level = 1; level < k; ++level) {
    const std::size_t z = g * layout.Instances(level);
    const std::size_t y = z + g * layout.Instances(level + 1);
    plan.mds.push_back(MakeMdsGenerator(y, z, field));
  }

  // Precoder rows reserved for each (type, message): consecutive slices in
  // level, then type order. Display labels number each message's codeword
  // symbols in the same order.
  std::map<std::vector<std::size_t>, std::size_t> code_of;
  std::vector<std::map<std::size_t, std::size_t>> slice(k), label_base(k);
  std::vector<std::size_t> slice_next(k, 0), label_next(k, 0);
  for (std::size_t level = 1; level < k; ++level) {
    for (const auto& type : SumTypes(k, level)) {
      if (Contains(type, desired)) continue;
      const std::size_t code = plan.codes.size();
      code_of[type] = code;
      plan.codes.push_back(InterferenceCode{type, level - 1, {}});
      plan.codes.back().known.resize(plan.mds[level - 1].cols);
      for (std::size_t m : type) {
        slice[m][code] = slice_next[m];
        slice_next[m] += plan.mds[level - 1].cols;
        label_base[m][code] = label_next[m];
        label_next[m] += plan.mds[level - 1].rows;
      }
    }
  }

  auto coded_term = [&](std::size_t m, std::size_t code, std::size_t pos) {
    const MdsGenerator& gen = plan.mds[plan.codes[code].level];
    const Matrix rows = plan.precoders[m].RowSlice(slice[m].at(code), gen.cols);
    QueryTerm term;
    term.message = m;
    term.label = label_base[m].at(code) + pos + 1;
    term.coeffs = RowTimes(field, gen.matrix.row(pos), rows);
    return term;
  };

  std::size_t next_desired = 0;
  for (std::size_t block = 1; block <= k; ++block) {
    const std::size_t instances = layout.Instances(block);
    for (const auto& type : SumTypes(k, block)) {
      for (std::size_t j = 0; j < g; ++j) {
        for (std::size_t inst = 0; inst < instances; ++inst) {
          const std::size_t r = layout.Row(type, inst);
          QueryRow& row = plan.group_queries[j].rows[r];
          if (!Contains(type, desired)) {
            const std::size_t code = code_of.at(type);
            const std::size_t pos = j * instances + inst;
            plan.codes[code].known[pos] = {j, r};
            for (std::size_t m : type) {
              row.terms.push_back(coded_term(m, code, pos));
            }
            continue;
          }
          DesiredSymbol d;
          d.group = j;
          d.row = r;
          d.position = next_desired++;
          QueryTerm desired_term;
          desired_term.message = desired;
          desired_term.label = d.position + 1;
          const auto s_row = plan.precoders[desired].row(d.position);
          desired_term.coeffs.assign(s_row.begin(), s_row.end());
          if (block > 1) {
            const std::size_t code = code_of.at(Without(type, desired));
            const std::size_t z = plan.mds[plan.codes[code].level].cols;
            d.interference = DesiredSymbol::Interference::kCodeword;
            d.code = code;
            d.code_position = z + j * instances + inst;
            for (std::size_t m : plan.codes[code].messages) {
              row.terms.push_back(coded_term(m, code, d.code_position));
            }
          }
          row.terms.push_back(std::move(desired_term));
          std::sort(row.terms.begin(), row.terms.end(),
                    [](const QueryTerm& a, const QueryTerm& b) {
                      return a.message < b.message;
                    });
          plan.recipe.push_back(d);
        }
      }
    }
  }
  return plan;
}

QueryPlan GenerateQueries(const SystemParams& params, const Grouping& grouping,
                          std::size_t desired, Rng& rng) {
  if (params.collusion == 1) {
    return GenerateQueriesT1(params, grouping, desired, rng);
  }
  return GenerateQueriesTpir(params, grouping, desired, rng);
}

std::string RenderRow(const QueryRow& row) {
  std::string out;
  for (const auto& term : row.terms) {
    if (!out.empty()) out += "+";
    out += static_cast<char>('a' + term.message);
    out += std::to_string(term.label);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Answers and decoding
// ---------------------------------------------------------------------------

std::vector<Symbol> Answer(std::size_t db, const StoragePlan& storage,
                           const QueryPlan& plan) {
  const DatabaseStore& store = storage.databases.at(db);
  if (store.group < 0 || (store.role != ShareRole::kNoisy &&
                          store.role != ShareRole::kNoiseOnly)) {
    throw Error(ErrorCode::kUngroupedDatabaseQueried,
                "database " + std::to_string(db + 1) + " belongs to no group");
  }
  const PrimeField field(storage.modulus);
  const GroupQuery& query = plan.group_queries.at(store.group);
  std::vector<Symbol> out;
  out.reserve(query.rows.size());
  for (const QueryRow& row : query.rows) {
    Symbol v = 0;
    for (const QueryTerm& term : row.terms) {
      v = field.Add(v, field.Dot(term.coeffs, store.stored.row(term.message)));
    }
    out.push_back(v);
  }
  return out;
}

std::vector<std::vector<Symbol>> CollectAnswers(const StoragePlan& storage,
                                                const QueryPlan& plan) {
  std::vector<std::vector<Symbol>> answers(storage.num_databases());
  for (const auto& group : storage.groups) {
    for (std::size_t db : group) answers[db] = Answer(db, storage, plan);
  }
  return answers;
}

namespace {

// Group-level answers with the noise removed: with members 0..m-2 holding
// W + N_i and member m-1 holding sum N_i, the difference of the sums is
// (m - 1) times the noise-free value.
std::vector<std::vector<Symbol>> CancelNoise(
    const std::vector<std::vector<Symbol>>& answers,
    const StoragePlan& storage, const QueryPlan& plan,
    const PrimeField& field) {
  const std::size_t rows = plan.rows_per_group();
  std::vector<std::vector<Symbol>> clean(storage.groups.size());
  for (std::size_t g = 0; g < storage.groups.size(); ++g) {
    const auto& members = storage.groups[g];
    std::vector<Symbol> acc(rows, 0);
    for (std::size_t idx = 0; idx < members.size(); ++idx) {
      const std::size_t db = members[idx];
      if (db >= answers.size() || answers[db].size() != rows) {
        throw Error(ErrorCode::kInconsistentAnswers,
                    "database " + std::to_string(db + 1) +
                        " returned the wrong number of symbols");
      }
      const bool noise_only = idx + 1 == members.size();
      for (std::size_t r = 0; r < rows; ++r) {
        const Symbol v = answers[db][r];
        if (v >= field.modulus()) {
          throw Error(ErrorCode::kInconsistentAnswers,
                      "answer symbol outside F_q");
        }
        acc[r] = noise_only ? field.Sub(acc[r], v) : field.Add(acc[r], v);
      }
    }
    const Symbol scale =
        field.Inv(static_cast<Symbol>(members.size() - 1) % field.modulus());
    for (Symbol& v : acc) v = field.Mul(v, scale);
    clean[g] = std::move(acc);
  }
  return clean;
}

}  // namespace

std::vector<Symbol> Decode(const std::vector<std::vector<Symbol>>& answers,
                           const StoragePlan& storage, const QueryPlan& plan,
                           const PrimeField& field) {
  const auto clean = CancelNoise(answers, storage, plan, field);
  const std::size_t length = plan.subpacket_length;

  if (plan.scheme == Scheme::kPermutedSums) {
    std::vector<Symbol> decoded(length, 0);
    for (const DesiredSymbol& d : plan.recipe) {
      Symbol v = clean[d.group][d.row];
      if (d.interference == DesiredSymbol::Interference::kSideRow) {
        v = field.Sub(v, clean[d.side_group][d.side_row]);
      }
      decoded[d.position] = v;
    }
    return decoded;
  }

  // Solve each interference code from its Z undesired-only positions.
  std::vector<std::vector<Symbol>> code_values(plan.codes.size());
  for (std::size_t c = 0; c < plan.codes.size(); ++c) {
    const InterferenceCode& code = plan.codes[c];
    const MdsGenerator& gen = plan.mds[code.level];
    std::vector<Symbol> known;
    for (const auto& [g, r] : code.known) known.push_back(clean[g][r]);
    code_values[c] = Solve(field, gen.matrix.RowSlice(0, gen.cols), known);
  }
  std::vector<Symbol> precoded(length, 0);
  for (const DesiredSymbol& d : plan.recipe) {
    Symbol v = clean[d.group][d.row];
    if (d.interference == DesiredSymbol::Interference::kCodeword) {
      const MdsGenerator& gen = plan.mds[plan.codes[d.code].level];
      v = field.Sub(v, field.Dot(gen.matrix.row(d.code_position),
                                 code_values[d.code]));
    }
    precoded[d.position] = v;
  }
  return Solve(field, plan.precoders[plan.desired], precoded);
}

DownloadCounts CountDownloads(const Transcript& transcript,
                              const StoragePlan& storage) {
  DownloadCounts counts;
  counts.per_group.assign(storage.groups.size(), 0);
  for (std::size_t g = 0; g < storage.groups.size(); ++g) {
    for (std::size_t db : storage.groups[g]) {
      counts.per_group[g] += transcript.answers.at(db).size();
    }
  }
  for (const auto& a : transcript.answers) counts.total += a.size();
  return counts;
}

Transcript Retrieve(const SystemParams& params, const Grouping& grouping,
                    const StoragePlan& storage, std::size_t desired,
                    Rng& rng) {
  const PrimeField field(params.modulus);
  Transcript t;
  t.plan = GenerateQueries(params, grouping, desired, rng);
  t.answers = CollectAnswers(storage, t.plan);
  t.decoded = Decode(t.answers, storage, t.plan, field);
  const DownloadCounts counts = CountDownloads(t, storage);
  t.group_downloads = counts.per_group;
  t.total_download = counts.total;
  return t;
}

MultiRetrieval RetrieveMessage(const SystemParams& params,
                               const Grouping& grouping,
                               const Matrix& messages, std::size_t desired,
                               Rng& rng) {
  const std::size_t length = params.subpacket_length;
  if (length == 0 || messages.cols() % length != 0 ||
      messages.rows() != params.num_messages) {
    throw Error(ErrorCode::kSubpacketMismatch,
                "message length is not a multiple of L");
  }
  const PrimeField field(params.modulus);
  MultiRetrieval out;
  out.subpackets = messages.cols() / length;
  for (std::size_t s = 0; s < out.subpackets; ++s) {
    Matrix part(messages.rows(), length);
    for (std::size_t r = 0; r < messages.rows(); ++r) {
      for (std::size_t c = 0; c < length; ++c) {
        part.at(r, c) = messages.at(r, s * length + c);
      }
    }
    const StoragePlan storage = BuildStorage(grouping, part, field, rng);
    const Transcript t = Retrieve(params, grouping, storage, desired, rng);
    out.decoded.insert(out.decoded.end(), t.decoded.begin(), t.decoded.end());
    out.total_download += t.total_download;
  }
  return out;
}

}  // namespace axstpir
