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

#include "axstpir/rational.h"

namespace axstpir {

std::string ToString(const Rational& r) {
  const BigInt den = Denominator(r);
  if (den == 1) return Numerator(r).str();
  return Numerator(r).str() + "/" + den.str();
}

double ToDouble(const Rational& r) { return r.convert_to<double>(); }

BigInt Ceil(const Rational& r) {
  const BigInt num = Numerator(r);
  const BigInt den = Denominator(r);
  BigInt q = num / den;  // truncates toward zero
  if (num % den != 0 && num > 0) q += 1;
  return q;
}

Rational Pow(const Rational& base, unsigned exponent) {
  Rational result = 1;
  for (unsigned i = 0; i < exponent; ++i) result *= base;
  return result;
}

}  // namespace axstpir
