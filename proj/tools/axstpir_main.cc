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

// Command-line front end: analyze, simulate, verify and sweep-x.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "axstpir/cli.h"
#include "axstpir/config.h"
#include "axstpir/error.h"

namespace {

bool WriteFile(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
  return static_cast<bool>(out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Grouped X-secure T-private information retrieval toolkit"};
  app.require_subcommand(1);
  app.fallthrough();

  std::optional<std::uint64_t> seed;
  app.add_option("--seed", seed, "Override the seed from the config");

  std::string config_path;
  std::string out_path;
  bool json_only = false;

  auto* analyze = app.add_subcommand("analyze", "Solve the grouping and report rates");
  analyze->add_option("config", config_path)->required()->check(CLI::ExistingFile);
  analyze->add_option("--out", out_path, "Write the JSON report here");
  analyze->add_flag("--json", json_only, "Print the JSON report instead of the table");

  std::size_t trials = 1;
  std::size_t threads = 0;
  std::string transcripts_path;
  auto* simulate = app.add_subcommand("simulate", "Run end-to-end retrievals");
  simulate->add_option("config", config_path)->required()->check(CLI::ExistingFile);
  simulate->add_option("--trials", trials)->check(CLI::PositiveNumber);
  simulate->add_option("--threads", threads, "Worker threads (0: all cores)");
  simulate->add_option("--transcripts", transcripts_path,
                       "Write one JSON transcript per trial here");
  simulate->add_option("--out", out_path, "Write the JSON report here");
  simulate->add_flag("--json", json_only, "Print the JSON report instead of a summary");

  auto* verify = app.add_subcommand("verify", "Run the security, privacy and decoding oracles");
  verify->add_option("config", config_path)->required()->check(CLI::ExistingFile);
  verify->add_option("--out", out_path, "Write the JSON report here");
  verify->add_flag("--json", json_only, "Print the JSON report instead of the table");

  std::int64_t from = 2;
  std::int64_t to = 2;
  auto* sweep = app.add_subcommand("sweep-x", "Compare rates across link sizes");
  sweep->add_option("config", config_path)->required()->check(CLI::ExistingFile);
  sweep->add_option("--from", from)->required();
  sweep->add_option("--to", to)->required();
  sweep->add_option("--out", out_path, "CSV output path")->required();

  CLI11_PARSE(app, argc, argv);

  axstpir::ExperimentConfig config;
  try {
    config = axstpir::LoadConfig(config_path);
  } catch (const axstpir::Error& e) {
    std::cerr << e.what() << "\n";
    return axstpir::kExitBadInput;
  }
  if (seed) config.seed = *seed;

  axstpir::SolverConfig solver;
  if (const char* budget = std::getenv("AXSTPIR_NODE_BUDGET")) {
    try {
      solver.max_nodes = std::stoull(budget);
    } catch (const std::exception&) {
      std::cerr << "AXSTPIR_NODE_BUDGET must be a non-negative integer\n";
      return axstpir::kExitBadInput;
    }
  }

  axstpir::CommandResult result;
  bool print_json = json_only;
  if (*analyze) {
    result = axstpir::RunAnalyze(config, solver);
  } else if (*simulate) {
    axstpir::SimulateOptions options;
    options.trials = trials;
    options.threads = threads;
    options.include_transcripts = !transcripts_path.empty();
    result = axstpir::RunSimulate(config, solver, options);
    if (options.include_transcripts &&
        !WriteFile(transcripts_path, result.transcripts)) {
      std::cerr << "cannot write " << transcripts_path << "\n";
      return axstpir::kExitBadInput;
    }
  } else if (*verify) {
    result = axstpir::RunVerify(config, solver);
  } else {
    result = axstpir::RunSweepX(config, solver, from, to);
  }

  if (!out_path.empty() && !WriteFile(out_path, result.report)) {
    std::cerr << "cannot write " << out_path << "\n";
    return axstpir::kExitBadInput;
  }
  std::cout << (print_json ? result.report : result.text);
  return result.exit_code;
}
