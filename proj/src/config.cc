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

#include "axstpir/config.h"

#include <fstream>
#include <sstream>

#include "axstpir/error.h"
#include "json.hpp"

namespace axstpir {
namespace {

using nlohmann::json;

[[noreturn]] void Bad(const std::string& what) {
  throw Error(ErrorCode::kInvalidConfig, what);
}

std::uint64_t ReadCount(const json& doc, const char* key, bool required,
                        std::uint64_t fallback) {
  if (!doc.contains(key)) {
    if (required) Bad(std::string("missing field \"") + key + "\"");
    return fallback;
  }
  const json& v = doc.at(key);
  if (!v.is_number_unsigned()) {
    Bad(std::string("field \"") + key + "\" must be a non-negative integer");
  }
  return v.get<std::uint64_t>();
}

std::vector<std::vector<std::size_t>> ReadSets(const json& v, const char* key,
                                               std::size_t n) {
  if (!v.is_array()) Bad(std::string("field \"") + key + "\" must be a list");
  std::vector<std::vector<std::size_t>> sets;
  for (const json& set : v) {
    if (!set.is_array()) Bad(std::string("\"") + key + "\" entries must be lists");
    std::vector<std::size_t> members;
    for (const json& x : set) {
      if (!x.is_number_unsigned()) Bad("database indices must be integers");
      const auto idx = x.get<std::uint64_t>();
      if (idx < 1 || idx > n) {
        Bad("database index " + std::to_string(idx) + " outside 1.." +
            std::to_string(n));
      }
      members.push_back(static_cast<std::size_t>(idx));
    }
    if (members.size() < 2) {
      Bad(std::string("every entry of \"") + key +
          "\" needs at least two databases");
    }
    sets.push_back(std::move(members));
  }
  return sets;
}

std::vector<std::vector<std::size_t>> ZeroBased(
    const std::vector<std::vector<std::size_t>>& sets) {
  std::vector<std::vector<std::size_t>> out;
  for (const auto& set : sets) {
    std::vector<std::size_t> members;
    for (std::size_t x : set) members.push_back(x - 1);
    out.push_back(std::move(members));
  }
  return out;
}

}  // namespace

ExperimentConfig ParseConfig(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    Bad(e.what());
  }
  if (!doc.is_object()) Bad("top level must be an object");
  for (const auto& [key, _] : doc.items()) {
    if (key != "N" && key != "K" && key != "T" && key != "q" && key != "seed" &&
        key != "links" && key != "groups") {
      Bad("unknown field \"" + key + "\"");
    }
  }

  ExperimentConfig config;
  config.num_databases = ReadCount(doc, "N", true, 0);
  config.num_messages = ReadCount(doc, "K", true, 0);
  config.collusion = ReadCount(doc, "T", false, 1);
  config.modulus = ReadCount(doc, "q", false, 65537);
  config.seed = ReadCount(doc, "seed", false, 0);
  ToParams(config).Validate();
  if (!doc.contains("links")) Bad("missing field \"links\"");
  config.links = ReadSets(doc.at("links"), "links", config.num_databases);
  if (doc.contains("groups")) {
    config.groups = ReadSets(doc.at("groups"), "groups", config.num_databases);
  }
  ToCommMatrix(config);
  SuppliedGrouping(config);
  return config;
}

ExperimentConfig LoadConfig(const std::string& path) {
  std::ifstream in(path);
  if (!in) Bad("cannot read " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return ParseConfig(buffer.str());
}

std::string SerializeConfig(const ExperimentConfig& config) {
  json doc;
  doc["N"] = config.num_databases;
  doc["K"] = config.num_messages;
  doc["T"] = config.collusion;
  doc["q"] = config.modulus;
  doc["seed"] = config.seed;
  doc["links"] = config.links;
  if (config.groups) doc["groups"] = *config.groups;
  return doc.dump(2) + "\n";
}

SystemParams ToParams(const ExperimentConfig& config) {
  SystemParams params;
  params.num_databases = config.num_databases;
  params.num_messages = config.num_messages;
  params.collusion = config.collusion;
  params.modulus = config.modulus;
  params.seed = config.seed;
  return params;
}

CommMatrix ToCommMatrix(const ExperimentConfig& config) {
  return CommMatrix::FromLinks(config.num_databases, ZeroBased(config.links));
}

std::optional<Grouping> SuppliedGrouping(const ExperimentConfig& config) {
  if (!config.groups) return std::nullopt;
  const Grouping grouping =
      Grouping::Make(config.num_databases, ZeroBased(*config.groups));
  DbMask seen = 0;
  for (const auto& group : grouping.groups) {
    const DbMask mask = MaskOf(group);
    if ((seen & mask) != 0 || static_cast<std::size_t>(PopCount(mask)) != group.size()) {
      Bad("supplied groups must be disjoint");
    }
    seen |= mask;
  }
  return grouping;
}

}  // namespace axstpir
