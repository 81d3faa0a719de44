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

#ifndef AXSTPIR_CONFIG_H_
#define AXSTPIR_CONFIG_H_

#include <optional>
#include <string>
#include <vector>

#include "axstpir/model.h"

namespace axstpir {

// The on-disk experiment description:
//   {"N": 6, "K": 2, "T": 2, "q": 65537, "seed": 7,
//    "links": [[2, 4], [1, 3, 5]],
//    "groups": [[1, 2], [3, 4], [5, 6]]}
// Database indices are 1-based. "groups" is optional and replaces the solver.
struct ExperimentConfig {
  std::size_t num_databases = 0;
  std::size_t num_messages = 0;
  std::size_t collusion = 1;
  std::uint64_t modulus = 65537;
  std::uint64_t seed = 0;
  std::vector<std::vector<std::size_t>> links;
  std::optional<std::vector<std::vector<std::size_t>>> groups;

  bool operator==(const ExperimentConfig&) const = default;
};

// Throws kInvalidConfig on malformed input or a link with fewer than two
// members, kInvalidParams when the parameters themselves are out of range.
ExperimentConfig ParseConfig(const std::string& text);
ExperimentConfig LoadConfig(const std::string& path);
std::string SerializeConfig(const ExperimentConfig& config);

SystemParams ToParams(const ExperimentConfig& config);
CommMatrix ToCommMatrix(const ExperimentConfig& config);
// The supplied grouping in 0-based form, if any.
std::optional<Grouping> SuppliedGrouping(const ExperimentConfig& config);

}  // namespace axstpir

#endif  // AXSTPIR_CONFIG_H_
