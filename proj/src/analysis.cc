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

#include "axstpir/analysis.h"

#include <string>

#include "axstpir/error.h"

namespace axstpir {

Rational CTpir(std::size_t t, std::size_t g, std::size_t k) {
  if (t < 1 || t >= g) {
    throw Error(ErrorCode::kTRangeViolation,
                "need 1 <= T < g (T = " + std::to_string(t) +
                    ", g = " + std::to_string(g) + ")");
  }
  if (k < 1) throw Error(ErrorCode::kInvalidParams, "need K >= 1");
  const Rational ratio = MakeRational(t, g);
  Rational sum = 0;
  Rational term = 1;
  for (std::size_t i = 0; i < k; ++i) {
    sum += term;
    term *= ratio;
  }
  return 1 / sum;
}

Rational AchievableRate(const Grouping& grouping, std::size_t t,
                        std::size_t k) {
  const std::size_t g = grouping.num_groups();
  if (g <= t) {
    throw Error(ErrorCode::kGNotGreaterThanT,
                "g = " + std::to_string(g) + " <= T = " + std::to_string(t));
  }
  return MakeRational(g, grouping.total_members()) * CTpir(t, g, k);
}

Rational AsymptoticAchievableRate(const Grouping& grouping, std::size_t t) {
  const std::size_t g = grouping.num_groups();
  if (g <= t) {
    throw Error(ErrorCode::kGNotGreaterThanT,
                "g = " + std::to_string(g) + " <= T = " + std::to_string(t));
  }
  return MakeRational(g - t, grouping.total_members());
}

Rational XstpirAsymptoticRate(std::size_t x, std::size_t t, std::size_t n) {
  if (n < 1) throw Error(ErrorCode::kInvalidParams, "need N >= 1");
  if (x + t >= n) return 0;
  return 1 - MakeRational(x + t, n);
}

Rational Eta(std::size_t link_size, std::size_t n, std::size_t t,
             std::size_t k) {
  if (link_size >= n) {
    throw Error(ErrorCode::kInvalidParams, "link covers every database");
  }
  const Rational ratio = MakeRational(t, n - link_size);
  Rational sum = 0;
  Rational term = ratio;
  for (std::size_t j = 1; j < k; ++j) {
    sum += term;
    term *= ratio;
  }
  return sum;
}

UpperBound RateUpperBound(const CommMatrix& b, const SystemParams& params) {
  const std::size_t n = params.num_databases;
  if (b.max_link_size() + params.collusion > n) {
    throw Error(ErrorCode::kInvalidParams, "bound needs X + T <= N");
  }
  if (b.num_links() == 0) return UpperBound{1, true};
  Rational denom = b.num_links();
  for (DbMask link : b.links()) {
    denom += Eta(PopCount(link), n, params.collusion, params.num_messages);
  }
  return UpperBound{Rational(LambdaMax(b)) / denom, false};
}

XRange BeneficialXRange(const Grouping& grouping, std::size_t t,
                        std::size_t n) {
  const std::size_t g = grouping.num_groups();
  const std::size_t total = grouping.total_members();
  XRange range;
  range.crossover =
      Rational(n) * (1 - MakeRational(static_cast<std::int64_t>(g) -
                                          static_cast<std::int64_t>(t),
                                      total)) -
      Rational(t);
  range.lo = static_cast<std::int64_t>(Ceil(range.crossover));
  range.hi = static_cast<std::int64_t>(n) - static_cast<std::int64_t>(g);
  if (range.lo > range.hi) {
    throw Error(ErrorCode::kEmptyRange,
                "no X in [" + std::to_string(range.lo) + ", " +
                    std::to_string(range.hi) + "]");
  }
  return range;
}

Rational SingleGroupRate(std::size_t group_size, std::size_t k) {
  if (group_size < 2 || k < 1) {
    throw Error(ErrorCode::kInvalidParams, "need M_1 >= 2 and K >= 1");
  }
  return MakeRational(1, group_size * k);
}

namespace {

bool AllLinksHaveSize(const CommMatrix& b, std::size_t size) {
  for (DbMask link : b.links()) {
    if (static_cast<std::size_t>(PopCount(link)) != size) return false;
  }
  return true;
}

}  // namespace

bool TightnessCheck(const CommMatrix& b, const Grouping& grouping) {
  if (b.num_links() == 0 || grouping.num_groups() == 0) return false;
  const std::size_t n = b.num_databases();
  const std::size_t g = grouping.num_groups();
  if (g > n || !AllLinksHaveSize(b, n - g)) return false;
  return MakeRational(LambdaMax(b), b.num_links()) ==
         MakeRational(g, grouping.total_members());
}

bool TightnessCheckFullUse(const CommMatrix& b, const Grouping& grouping) {
  if (b.num_links() == 0 || grouping.num_groups() == 0) return false;
  const std::size_t n = b.num_databases();
  const std::size_t g = grouping.num_groups();
  if (g > n || !AllLinksHaveSize(b, n - g)) return false;
  return MakeRational(LambdaMax(b), b.num_links()) == MakeRational(g, n);
}

std::uint64_t PerMemberDownload(std::size_t g, std::size_t t, std::size_t k) {
  std::uint64_t total = 0;
  for (std::size_t i = 1; i <= k; ++i) {
    std::uint64_t term = Binomial(k, i);
    for (std::size_t e = 1; e < i; ++e) term *= (g - t);
    for (std::size_t e = i; e < k; ++e) term *= t;
    total += term;
  }
  return total;
}

Rational ColludingRateWithBase(std::size_t g, std::size_t t, std::size_t k,
                               std::size_t total_members, std::int64_t base) {
  BigInt num = 0, den = 0;
  for (std::size_t i = 1; i <= k; ++i) {
    BigInt common = 1;
    for (std::size_t e = 1; e < i; ++e) common *= base;  // 0^0 = 1
    for (std::size_t e = i; e < k; ++e) common *= t;
    num += common * Binomial(k - 1, i - 1);
    den += common * Binomial(k, i);
  }
  return Rational(BigInt(g) * num, BigInt(total_members) * den);
}

RateReport Analyze(const SystemParams& params, const CommMatrix& b,
                   const Grouping& grouping) {
  RateReport report;
  const std::size_t t = params.collusion;
  const std::size_t n = params.num_databases;
  report.grouping = grouping;
  report.x = b.max_link_size();
  report.lambda = LambdaMax(b);
  report.achievable = AchievableRate(grouping, t, params.num_messages);
  report.asymptotic_achievable = AsymptoticAchievableRate(grouping, t);
  report.baseline_xstpir = XstpirAsymptoticRate(report.x, t, n);
  if (report.x + t <= n) {
    report.upper_bound = RateUpperBound(b, params);
    report.bound_defined = true;
  }
  try {
    report.beneficial_x_range = BeneficialXRange(grouping, t, n);
    report.range_defined = true;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kEmptyRange) throw;
  }
  report.tight = TightnessCheck(b, grouping);
  report.tight_full_use = TightnessCheckFullUse(b, grouping);
  return report;
}

}  // namespace axstpir
