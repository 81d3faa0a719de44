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

#ifndef AXSTPIR_ANALYSIS_H_
#define AXSTPIR_ANALYSIS_H_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "axstpir/model.h"
#include "axstpir/rational.h"

namespace axstpir {

// (1 + T/g + ... + (T/g)^(K-1))^-1. kTRangeViolation unless 1 <= T < g.
Rational CTpir(std::size_t t, std::size_t g, std::size_t k);

// (g / sum M_i) * CTpir(T, g, K). kGNotGreaterThanT when g <= T.
Rational AchievableRate(const Grouping& grouping, std::size_t t, std::size_t k);

// K -> infinity limit of AchievableRate: (g - T) / sum M_i.
Rational AsymptoticAchievableRate(const Grouping& grouping, std::size_t t);

// Classical symmetric baseline: 1 - (X + T)/N, or 0 once X + T >= N.
Rational XstpirAsymptoticRate(std::size_t x, std::size_t t, std::size_t n);

// eta(link) = sum_{j=1}^{K-1} (T / (N - |link|))^j.
Rational Eta(std::size_t link_size, std::size_t n, std::size_t t,
             std::size_t k);

struct UpperBound {
  Rational value;
  // No links: the bound formula is undefined and `value` is reported as 1.
  bool unconstrained = false;
};

// lambda / (M + sum_i eta(X_i)). kInvalidParams unless X + T <= N.
UpperBound RateUpperBound(const CommMatrix& b, const SystemParams& params);

struct XRange {
  std::int64_t lo = 0;
  std::int64_t hi = 0;
  // N (1 - (g - T) / sum M_i) - T before rounding up; at X equal to this
  // value the two asymptotic rates coincide.
  Rational crossover;
};

// [ceil(N (1 - (g - T)/sum M_i) - T), N - g]. kEmptyRange when lo > hi.
XRange BeneficialXRange(const Grouping& grouping, std::size_t t, std::size_t n);

// 1 / (M_1 K): one group of M_1 databases downloading every message.
Rational SingleGroupRate(std::size_t group_size, std::size_t k);

// All links have size N - g and lambda / M == g / sum M_i.
bool TightnessCheck(const CommMatrix& b, const Grouping& grouping);
// The variant used when substituting into the bound with lambda / M == g / N.
// Differs from TightnessCheck only when databases are dropped.
bool TightnessCheckFullUse(const CommMatrix& b, const Grouping& grouping);

// Symbols downloaded from one group member for one subpacket:
// sum_{i=1}^{K} C(K, i) * (g - T)^(i-1) * T^(K-i).
std::uint64_t PerMemberDownload(std::size_t g, std::size_t t, std::size_t k);

// Rate of the group-based colluding scheme written with an explicit base b
// for the (.)^(i-1) factors:
//   g sum_i b^(i-1) T^(K-i) C(K-1, i-1) / (sum M_j sum_i b^(i-1) T^(K-i) C(K, i)).
// b = g - T gives the protocol's rate; other bases are for comparison.
Rational ColludingRateWithBase(std::size_t g, std::size_t t, std::size_t k,
                               std::size_t total_members, std::int64_t base);

struct RateReport {
  Rational achievable;
  Rational asymptotic_achievable;
  Rational baseline_xstpir;
  UpperBound upper_bound;
  bool bound_defined = false;  // X + T <= N
  bool range_defined = false;
  XRange beneficial_x_range;
  bool tight = false;
  bool tight_full_use = false;
  std::size_t x = 0;
  std::size_t lambda = 0;
  Grouping grouping;
};

RateReport Analyze(const SystemParams& params, const CommMatrix& b,
                   const Grouping& grouping);

}  // namespace axstpir

#endif  // AXSTPIR_ANALYSIS_H_
