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

#ifndef AXSTPIR_VERIFY_H_
#define AXSTPIR_VERIFY_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "axstpir/field.h"
#include "axstpir/model.h"
#include "axstpir/pir.h"

namespace axstpir {

// Stored symbols of a database set written as A w + B z, where w is the
// flattened K x L message matrix and z stacks every noise matrix of every
// group (group order, then N_1..N_{m-1}, row-major).
struct LinearStorageMap {
  Matrix message_coeffs;  // A
  Matrix noise_coeffs;    // B
};

LinearStorageMap ExtractStorageMap(const StoragePlan& plan, DbMask link);

// True iff col(A) is inside col(B): the link's view is then independent of
// uniformly distributed messages under uniform noise.
bool SecurityRankCheck(const StoragePlan& plan, DbMask link);

struct MiResult {
  bool independent = false;
  double mutual_information_bits = 0.0;
  std::uint64_t states = 0;
};

// Exhaustive I(W; S_link) for a tiny instance: every message matrix and
// every noise assignment of the groups touching the link is fed through
// BuildStorage. Throws kStateSpaceTooLarge above `max_states`.
MiResult SecurityMiBruteforce(const Grouping& grouping, std::size_t num_messages,
                              std::size_t subpacket_length,
                              const PrimeField& field, DbMask link,
                              std::uint64_t max_states = 10'000'000);

struct PrivacyResult {
  bool is_private = false;
  std::uint64_t enumerated = 0;
  std::string method;
};

// T = 1 scheme. Enumerates the user's permutation randomness for each
// desired index and compares the exact distributions of the queries seen by
// `colluding`. Full joint enumeration when (L!)^K <= max_states, otherwise
// per message (the permutations are independent, so the joint law is the
// product of the per-message laws).
PrivacyResult PrivacyBruteforceT1(const SystemParams& params,
                                  const Grouping& grouping,
                                  const std::vector<std::size_t>& colluding,
                                  std::uint64_t max_states = 20'000'000);

// 1 < T < g scheme. The view of `colluding` for message m is P_m S_m with
// S_m uniform over GL(L), whose law is fixed by the left kernel of P_m (the
// linear relations among the observed rows). Compares the row structure and
// those kernels across desired indices; exact, one draw per index suffices.
PrivacyResult PrivacyOrbitCheckTpir(const SystemParams& params,
                                    const Grouping& grouping,
                                    const std::vector<std::size_t>& colluding,
                                    Rng& rng);

bool DecodabilityCheck(const Transcript& transcript, const Matrix& messages);

struct RedundantMemberResult {
  std::size_t trimmed_group_download = 0;
  std::size_t augmented_group_download = 0;
  bool both_decode = false;
  bool both_secure = false;
  bool ok() const {
    return both_decode && both_secure &&
           trimmed_group_download == augmented_group_download;
  }
};

// A group of d*n databases next to (g - 1) pairs, against the same group
// augmented with `extra` databases that replicate existing shares and are
// never queried. The augmented grouping is trimmed with TrimGroups,
// both configurations run the T = 1 protocol for K messages, and every
// coalition that misses at least one distinct share of the group is checked
// with SecurityRankCheck.
RedundantMemberResult RedundantMemberEquivalence(
    std::size_t d, std::size_t n, std::size_t extra, std::size_t num_messages,
    std::size_t num_groups, std::uint64_t modulus, std::uint64_t seed);

}  // namespace axstpir

#endif  // AXSTPIR_VERIFY_H_
