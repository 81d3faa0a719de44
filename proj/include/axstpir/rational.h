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

#ifndef AXSTPIR_RATIONAL_H_
#define AXSTPIR_RATIONAL_H_

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace axstpir {

// Exact rates. cpp_rational keeps numerator/denominator reduced with a
// positive denominator.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Rational MakeRational(std::int64_t num, std::int64_t den = 1) {
  return Rational(BigInt(num), BigInt(den));
}

inline BigInt Numerator(const Rational& r) {
  return boost::multiprecision::numerator(r);
}
inline BigInt Denominator(const Rational& r) {
  return boost::multiprecision::denominator(r);
}

// "num/den", or just "num" for integers.
std::string ToString(const Rational& r);

// Rendering only; never feed the result back into rate arithmetic.
double ToDouble(const Rational& r);

// Smallest integer >= r.
BigInt Ceil(const Rational& r);

Rational Pow(const Rational& base, unsigned exponent);

}  // namespace axstpir

#endif  // AXSTPIR_RATIONAL_H_
