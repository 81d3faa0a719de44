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

#include "axstpir/cli.h"

#include <algorithm>
#include <future>
#include <limits>
#include <sstream>
#include <thread>
#include <vector>

#include "axstpir/analysis.h"
#include "axstpir/error.h"
#include "axstpir/field.h"
#include "axstpir/pir.h"
#include "axstpir/rational.h"
#include "axstpir/verify.h"
#include "json.hpp"

namespace axstpir {
namespace {

using nlohmann::json;

json BigJson(const BigInt& v) {
  if (v >= std::numeric_limits<std::int64_t>::min() &&
      v <= std::numeric_limits<std::int64_t>::max()) {
    return static_cast<std::int64_t>(v);
  }
  return v.str();
}

json RationalJson(const Rational& r) {
  return {{"num", BigJson(Numerator(r))},
          {"den", BigJson(Denominator(r))},
          {"decimal", ToDouble(r)}};
}

std::vector<std::vector<std::size_t>> OneBased(
    const std::vector<std::vector<std::size_t>>& sets) {
  auto out = sets;
  for (auto& set : out) {
    for (auto& x : set) ++x;
  }
  return out;
}

std::vector<std::size_t> OneBased(std::vector<std::size_t> xs) {
  for (auto& x : xs) ++x;
  return xs;
}

std::vector<DbMask> LinksAndSingletons(const CommMatrix& b) {
  std::vector<DbMask> sets = b.links();
  for (std::size_t db = 0; db < b.num_databases(); ++db) {
    sets.push_back(DbMask{1} << db);
  }
  return sets;
}

int ExitCodeFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInfeasible:
      return kExitInfeasible;
    case ErrorCode::kAssertionFailure:
    case ErrorCode::kInconsistentAnswers:
      return kExitContractFailed;
    default:
      return kExitBadInput;
  }
}

template <typename Fn>
CommandResult Guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    CommandResult result;
    result.exit_code = ExitCodeFor(e.code());
    const bool infeasible = e.code() == ErrorCode::kInfeasible;
    json report = {{"status", infeasible ? "infeasible" : "error"},
                   {"error", std::string(ErrorCodeName(e.code()))},
                   {"message", e.what()}};
    result.report = report.dump(2) + "\n";
    result.text = std::string(e.what()) + "\n";
    return result;
  }
}

std::string Row(const std::string& key, const std::string& value) {
  std::string line = key;
  line.resize(std::max<std::size_t>(line.size() + 1, 26), ' ');
  return line + value + "\n";
}

std::string SetsText(const std::vector<std::vector<std::size_t>>& sets) {
  std::string out;
  for (const auto& set : sets) {
    out += out.empty() ? "{" : " {";
    for (std::size_t i = 0; i < set.size(); ++i) {
      out += (i ? "," : "") + std::to_string(set[i]);
    }
    out += "}";
  }
  return out.empty() ? "-" : out;
}

std::string CheckStatus(bool ran, bool ok) {
  return !ran ? "skipped" : (ok ? "pass" : "fail");
}

// Every T-subset of databases when N <= 8, otherwise 1000 random ones.
std::vector<std::vector<std::size_t>> ColludingSets(std::size_t n, std::size_t t,
                                                    Rng& rng) {
  std::vector<std::vector<std::size_t>> sets;
  if (n <= 8) {
    for (DbMask mask = 0; mask < (DbMask{1} << n); ++mask) {
      if (static_cast<std::size_t>(PopCount(mask)) == t) {
        sets.push_back(MembersOf(mask));
      }
    }
    return sets;
  }
  for (int i = 0; i < 1000; ++i) {
    std::vector<std::size_t> perm = rng.Permutation(n);
    perm.resize(t);
    std::sort(perm.begin(), perm.end());
    sets.push_back(std::move(perm));
  }
  return sets;
}

}  // namespace

Grouping ResolveGrouping(const ExperimentConfig& config,
                         const SolverConfig& solver) {
  const CommMatrix b = ToCommMatrix(config);
  if (auto supplied = SuppliedGrouping(config)) {
    if (!IsValidGrouping(*supplied, b)) {
      throw Error(ErrorCode::kInvalidConfig,
                  "supplied groups are not valid: each group needs two or more "
                  "databases and must not lie inside a link");
    }
    return *supplied;
  }
  const SystemParams params = ToParams(config);
  if (!FeasibilityCheck(params, b)) {
    const std::size_t x = b.max_link_size();
    throw Error(ErrorCode::kInfeasible,
                "every one of the " +
                    std::to_string(Binomial(params.num_databases, x)) +
                    " sets of X = " + std::to_string(x) +
                    " databases is a link, so the grouping problem has no "
                    "admissible solution");
  }
  return SolveGrouping(params, b, solver);
}

CommandResult RunAnalyze(const ExperimentConfig& config,
                         const SolverConfig& solver) {
  return Guarded([&] {
    const SystemParams params = ToParams(config);
    const CommMatrix b = ToCommMatrix(config);
    const Grouping grouping = ResolveGrouping(config, solver);
    const RateReport r = Analyze(params, b, grouping);
    const std::size_t g = grouping.num_groups();
    const std::uint64_t per_member =
        PerMemberDownload(g, params.collusion, params.num_messages);

    json report;
    report["status"] = "ok";
    report["N"] = params.num_databases;
    report["K"] = params.num_messages;
    report["T"] = params.collusion;
    report["X"] = r.x;
    report["lambda"] = r.lambda;
    report["links"] = b.num_links();
    report["duplicate_links_collapsed"] = b.duplicates_collapsed();
    report["grouping_source"] = config.groups ? "supplied" : "solver";
    report["grouping"] = OneBased(grouping.groups);
    report["dropped"] = OneBased(grouping.dropped());
    report["g"] = g;
    report["total_members"] = grouping.total_members();
    report["subpacket_length"] = SubpacketLength(g, params.num_messages);
    report["download_per_member"] = per_member;
    report["download_total"] = per_member * grouping.total_members();
    report["achievable_rate"] = RationalJson(r.achievable);
    report["asymptotic_rate"] = RationalJson(r.asymptotic_achievable);
    report["baseline_rate"] = RationalJson(r.baseline_xstpir);
    report["beats_baseline"] = {
        {"finite_k", r.achievable > r.baseline_xstpir},
        {"asymptotic", r.asymptotic_achievable > r.baseline_xstpir}};
    if (r.bound_defined) {
      report["upper_bound"] = {{"value", RationalJson(r.upper_bound.value)},
                               {"unconstrained", r.upper_bound.unconstrained}};
    } else {
      report["upper_bound"] = nullptr;
    }
    if (r.range_defined) {
      report["beneficial_x_range"] = {
          {"lo", r.beneficial_x_range.lo},
          {"hi", r.beneficial_x_range.hi},
          {"crossover", RationalJson(r.beneficial_x_range.crossover)}};
    } else {
      report["beneficial_x_range"] = nullptr;
    }
    report["tight"] = r.tight;
    report["tight_if_all_used"] = r.tight_full_use;

    CommandResult result;
    result.report = report.dump(2) + "\n";
    std::string& text = result.text;
    text += Row("databases N", std::to_string(params.num_databases));
    text += Row("messages K", std::to_string(params.num_messages));
    text += Row("collusion T", std::to_string(params.collusion));
    text += Row("max link size X", std::to_string(r.x));
    text += Row("groups", SetsText(OneBased(grouping.groups)));
    text += Row("dropped", SetsText({OneBased(grouping.dropped())}));
    text += Row("achievable rate", ToString(r.achievable));
    text += Row("asymptotic rate", ToString(r.asymptotic_achievable));
    text += Row("baseline rate", ToString(r.baseline_xstpir));
    text += Row("upper bound",
                r.bound_defined
                    ? ToString(r.upper_bound.value) +
                          (r.upper_bound.unconstrained ? " (unconstrained)" : "")
                    : "undefined (X + T > N)");
    text += Row("beneficial X range",
                r.range_defined
                    ? "[" + std::to_string(r.beneficial_x_range.lo) + ", " +
                          std::to_string(r.beneficial_x_range.hi) + "]"
                    : "empty");
    text += Row("meets upper bound", r.tight ? "yes" : "no");
    return result;
  });
}

CommandResult RunSimulate(const ExperimentConfig& config,
                          const SolverConfig& solver,
                          const SimulateOptions& options) {
  return Guarded([&] {
    if (options.trials == 0) {
      throw Error(ErrorCode::kInvalidParams, "trials must be at least 1");
    }
    SystemParams params = ToParams(config);
    const CommMatrix b = ToCommMatrix(config);
    const Grouping grouping = ResolveGrouping(config, solver);
    params.subpacket_length =
        SubpacketLength(grouping.num_groups(), params.num_messages);
    const Rational achievable =
        AchievableRate(grouping, params.collusion, params.num_messages);
    const std::vector<DbMask> watched = LinksAndSingletons(b);

    std::vector<std::uint64_t> seeds(options.trials);
    Rng seeder(params.seed);
    for (auto& s : seeds) s = seeder.NextSeed();

    struct Outcome {
      json summary;
      json transcript;
      std::string failure;
    };
    auto run_trial = [&](std::size_t trial) {
      const PrimeField field(params.modulus);
      Rng rng(seeds[trial]);
      const Matrix messages = RandomMatrix(
          params.num_messages, params.subpacket_length, field, rng);
      const std::size_t desired = rng.Uniform(params.num_messages);
      const StoragePlan storage = BuildStorage(grouping, messages, field, rng);
      const Transcript t = Retrieve(params, grouping, storage, desired, rng);

      const bool decoded = DecodabilityCheck(t, messages);
      bool secure = true;
      for (DbMask set : watched) secure = secure && SecurityRankCheck(storage, set);
      const Rational measured =
          MakeRational(static_cast<std::int64_t>(params.subpacket_length),
                       static_cast<std::int64_t>(t.total_download));
      const bool rate_ok = measured == achievable;

      Outcome out;
      out.failure = !decoded ? "decodability" : !secure ? "security"
                                              : !rate_ok ? "rate" : "";
      out.summary = {{"trial", trial},
                     {"seed", seeds[trial]},
                     {"desired", desired + 1},
                     {"download", t.total_download},
                     {"group_downloads", t.group_downloads},
                     {"measured_rate", RationalJson(measured)},
                     {"decoded", decoded},
                     {"secure", secure},
                     {"rate_matches", rate_ok}};
      if (options.include_transcripts) {
        json queries = json::array();
        for (const GroupQuery& q : t.plan.group_queries) {
          json rows = json::array();
          for (const QueryRow& row : q.rows) rows.push_back(RenderRow(row));
          queries.push_back(rows);
        }
        json answers = json::object();
        for (std::size_t db = 0; db < t.answers.size(); ++db) {
          if (!t.answers[db].empty()) {
            answers[std::to_string(db + 1)] = t.answers[db];
          }
        }
        out.transcript = {{"trial", trial},
                          {"seed", seeds[trial]},
                          {"desired", desired + 1},
                          {"queries", queries},
                          {"answers", answers},
                          {"decoded", t.decoded}};
      }
      return out;
    };

    std::size_t threads = options.threads;
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    std::vector<Outcome> outcomes;
    for (std::size_t start = 0; start < options.trials; start += threads) {
      const std::size_t end = std::min(options.trials, start + threads);
      std::vector<std::future<Outcome>> batch;
      for (std::size_t i = start; i < end; ++i) {
        batch.push_back(std::async(std::launch::async, run_trial, i));
      }
      for (auto& f : batch) outcomes.push_back(f.get());
    }

    json report;
    report["grouping"] = OneBased(grouping.groups);
    report["subpacket_length"] = params.subpacket_length;
    report["achievable_rate"] = RationalJson(achievable);
    report["trials"] = json::array();
    CommandResult result;
    std::string first_failure;
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
      report["trials"].push_back(outcomes[i].summary);
      if (options.include_transcripts) {
        result.transcripts += outcomes[i].transcript.dump() + "\n";
      }
      if (first_failure.empty() && !outcomes[i].failure.empty()) {
        first_failure = std::string(ErrorCodeName(ErrorCode::kAssertionFailure)) +
                        ": " + outcomes[i].failure + " violated in trial " +
                        std::to_string(i);
      }
    }
    report["status"] = first_failure.empty() ? "ok" : "assertion_failure";
    if (!first_failure.empty()) report["message"] = first_failure;
    result.exit_code = first_failure.empty() ? kExitOk : kExitContractFailed;
    result.report = report.dump(2) + "\n";
    result.text = std::to_string(outcomes.size()) + " trials, rate " +
                  ToString(achievable) + ", " +
                  (first_failure.empty() ? "all contracts hold"
                                         : first_failure) +
                  "\n";
    return result;
  });
}

CommandResult RunVerify(const ExperimentConfig& config,
                        const SolverConfig& solver) {
  return Guarded([&] {
    SystemParams params = ToParams(config);
    const CommMatrix b = ToCommMatrix(config);
    const Grouping grouping = ResolveGrouping(config, solver);
    const std::size_t g = grouping.num_groups();
    const std::size_t k = params.num_messages;
    const std::size_t t = params.collusion;
    params.subpacket_length = SubpacketLength(g, k);
    const PrimeField field(params.modulus);
    Rng rng(params.seed);
    const std::vector<DbMask> watched = LinksAndSingletons(b);

    json checks = json::array();
    bool failed = false;
    auto record = [&](const std::string& name, bool ran, bool ok,
                      const std::string& detail) {
      const std::string status = CheckStatus(ran, ok);
      failed = failed || status == "fail";
      checks.push_back({{"name", name}, {"status", status}, {"detail", detail}});
    };

    {
      const Matrix messages = RandomMatrix(k, params.subpacket_length, field, rng);
      const StoragePlan storage = BuildStorage(grouping, messages, field, rng);
      bool ok = true;
      for (DbMask set : watched) ok = ok && SecurityRankCheck(storage, set);
      record("security_rank", true, ok,
             std::to_string(watched.size()) + " links and singletons");
    }

    {
      // Same grouping over F_2 with one one-symbol message.
      const PrimeField tiny(2);
      std::size_t compared = 0;
      bool agree = true;
      for (DbMask set : watched) {
        try {
          const MiResult mi =
              SecurityMiBruteforce(grouping, 1, 1, tiny, set, 1u << 20);
          const StoragePlan storage =
              BuildStorage(grouping, Matrix(1, 1), tiny, rng);
          agree = agree && mi.independent == SecurityRankCheck(storage, set) &&
                  mi.independent == (mi.mutual_information_bits == 0.0);
          ++compared;
        } catch (const Error& e) {
          if (e.code() != ErrorCode::kStateSpaceTooLarge) throw;
        }
      }
      record("security_mi_agreement", compared > 0, agree,
             std::to_string(compared) + " of " + std::to_string(watched.size()) +
                 " sets enumerated over F_2");
    }

    {
      const auto sets = ColludingSets(params.num_databases, t, rng);
      bool ran = false;
      bool ok = true;
      std::string detail;
      if (g <= t) {
        detail = "needs g > T";
      } else if (t == 1 && (k > 2 || params.subpacket_length > 9)) {
        detail = "enumeration limited to K <= 2 and L <= 9";
      } else {
        ran = true;
        for (const auto& set : sets) {
          const PrivacyResult r =
              t == 1 ? PrivacyBruteforceT1(params, grouping, set)
                     : PrivacyOrbitCheckTpir(params, grouping, set, rng);
          ok = ok && r.is_private;
          detail = r.method;
        }
        detail = std::to_string(sets.size()) + " colluding sets, " + detail;
      }
      record("privacy", ran, ok, detail);
    }

    {
      bool ok = true;
      if (g > t) {
        for (std::size_t desired = 0; desired < k; ++desired) {
          const Matrix messages =
              RandomMatrix(k, params.subpacket_length, field, rng);
          const StoragePlan storage = BuildStorage(grouping, messages, field, rng);
          ok = ok && DecodabilityCheck(
                         Retrieve(params, grouping, storage, desired, rng),
                         messages);
        }
        const Matrix zero(k, params.subpacket_length);
        const StoragePlan storage = BuildStorage(grouping, zero, field, rng);
        ok = ok && DecodabilityCheck(Retrieve(params, grouping, storage, 0, rng),
                                     zero);
      }
      record("decodability", g > t, ok,
             g > t ? "every desired index and the all-zero library"
                   : "needs g > T");
    }

    json report = {{"status", failed ? "fail" : "ok"},
                   {"grouping", OneBased(grouping.groups)},
                   {"checks", checks}};
    CommandResult result;
    result.exit_code = failed ? kExitContractFailed : kExitOk;
    result.report = report.dump(2) + "\n";
    for (const auto& c : checks) {
      result.text += Row(c["name"].get<std::string>(),
                         c["status"].get<std::string>() + "  " +
                             c["detail"].get<std::string>());
    }
    return result;
  });
}

CommandResult RunSweepX(const ExperimentConfig& config,
                        const SolverConfig& solver, std::int64_t from,
                        std::int64_t to) {
  return Guarded([&] {
    const auto n = static_cast<std::int64_t>(config.num_databases);
    if (from < 2 || to > n - 1 || from > to) {
      throw Error(ErrorCode::kInvalidParams,
                  "sweep range must satisfy 2 <= from <= to <= N - 1");
    }
    const Grouping grouping = ResolveGrouping(config, solver);
    const Rational ours = AsymptoticAchievableRate(grouping, config.collusion);

    CommandResult result;
    std::ostringstream csv;
    csv << "X,baseline_num,baseline_den,axstpir_num,axstpir_den,beats_baseline\n";
    for (std::int64_t x = from; x <= to; ++x) {
      const Rational base = XstpirAsymptoticRate(
          static_cast<std::size_t>(x), config.collusion, config.num_databases);
      csv << x << ',' << Numerator(base) << ',' << Denominator(base) << ','
          << Numerator(ours) << ',' << Denominator(ours) << ','
          << (ours > base ? "true" : "false") << '\n';
      result.text += Row("X = " + std::to_string(x),
                         ToString(ours) + " vs " + ToString(base));
    }
    result.report = csv.str();
    return result;
  });
}

}  // namespace axstpir
