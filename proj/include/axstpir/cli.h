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

#ifndef AXSTPIR_CLI_H_
#define AXSTPIR_CLI_H_

#include <cstddef>
#include <cstdint>
#include <string>

#include "axstpir/config.h"
#include "axstpir/grouping.h"

namespace axstpir {

inline constexpr int kExitOk = 0;
inline constexpr int kExitContractFailed = 1;
inline constexpr int kExitBadInput = 2;
inline constexpr int kExitInfeasible = 3;

struct CommandResult {
  int exit_code = kExitOk;
  std::string report;  // JSON for analyze/simulate/verify, CSV for sweep-x
  std::string text;    // human-readable summary
  std::string transcripts;  // simulate only: one JSON document per line
};

// The configured grouping if one is supplied, otherwise the solver's.
Grouping ResolveGrouping(const ExperimentConfig& config,
                         const SolverConfig& solver);

// Library errors are caught by every Run* function and turned into an
// {"status": "error"} report with a nonzero exit code.
CommandResult RunAnalyze(const ExperimentConfig& config,
                         const SolverConfig& solver);

struct SimulateOptions {
  std::size_t trials = 1;
  std::size_t threads = 0;  // 0: hardware concurrency
  bool include_transcripts = false;
};

// End-to-end retrievals with fresh messages per trial. Each trial checks
// decoding, storage security on every link and singleton, and L / D against
// the achievable rate.
CommandResult RunSimulate(const ExperimentConfig& config,
                          const SolverConfig& solver,
                          const SimulateOptions& options);

// Runs the security, privacy and decodability oracles on the configuration.
CommandResult RunVerify(const ExperimentConfig& config,
                        const SolverConfig& solver);

// CSV of the baseline and grouped asymptotic rates for X in [from, to].
CommandResult RunSweepX(const ExperimentConfig& config,
                        const SolverConfig& solver, std::int64_t from,
                        std::int64_t to);

}  // namespace axstpir

#endif  // AXSTPIR_CLI_H_
