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

#ifndef AXSTPIR_FIELD_H_
#define AXSTPIR_FIELD_H_

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace axstpir {

// An element of F_q, always held reduced into [0, q).
using Symbol = std::uint64_t;

// Arithmetic over a prime field F_q with q < 2^32.
class PrimeField {
 public:
  explicit PrimeField(std::uint64_t modulus);

  std::uint64_t modulus() const { return q_; }

  Symbol Reduce(std::uint64_t v) const { return v % q_; }
  Symbol Add(Symbol a, Symbol b) const {
    const Symbol s = a + b;
    return s >= q_ ? s - q_ : s;
  }
  Symbol Sub(Symbol a, Symbol b) const { return a >= b ? a - b : a + q_ - b; }
  Symbol Neg(Symbol a) const { return a == 0 ? 0 : q_ - a; }
  Symbol Mul(Symbol a, Symbol b) const { return (a * b) % q_; }
  Symbol Pow(Symbol base, std::uint64_t exponent) const;
  // Throws Error(kDivideByZero) for a == 0.
  Symbol Inv(Symbol a) const;
  Symbol Div(Symbol a, Symbol b) const { return Mul(a, Inv(b)); }

  // sum_i a[i] * b[i]
  Symbol Dot(std::span<const Symbol> a, std::span<const Symbol> b) const;

  bool operator==(const PrimeField& other) const = default;

 private:
  std::uint64_t q_;
};

// Deterministic source of randomness. Bounded draws use rejection sampling on
// mt19937_64 so that a seed reproduces byte-identical results on every
// platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform in [0, bound).
  std::uint64_t Uniform(std::uint64_t bound);
  std::vector<std::size_t> Permutation(std::size_t n);
  std::uint64_t NextSeed() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

// Dense row-major matrix over F_q.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

  static Matrix Identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Symbol& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  Symbol at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  std::span<Symbol> row(std::size_t r) {
    return {data_.data() + r * cols_, cols_};
  }
  std::span<const Symbol> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }

  // Rows [first, first + count).
  Matrix RowSlice(std::size_t first, std::size_t count) const;
  Matrix SelectRows(std::span<const std::size_t> indices) const;
  Matrix Transposed() const;

  bool operator==(const Matrix& other) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Symbol> data_;
};

Matrix Multiply(const PrimeField& f, const Matrix& a, const Matrix& b);
// a(row) * b for a single row vector.
std::vector<Symbol> RowTimes(const PrimeField& f, std::span<const Symbol> row,
                             const Matrix& b);
std::vector<Symbol> MatVec(const PrimeField& f, const Matrix& a,
                           std::span<const Symbol> x);

// Rank by Gaussian elimination.
std::size_t Rank(const PrimeField& f, Matrix m);

// Reduced row echelon form with zero rows removed.
Matrix RowReduce(const PrimeField& f, Matrix m);

// Basis (in reduced echelon form) of {x : x * m = 0}.
Matrix LeftKernel(const PrimeField& f, const Matrix& m);

// Inverse of a square matrix; Error(kDivideByZero) when singular.
Matrix Inverse(const PrimeField& f, const Matrix& m);

// Solves a * x = b for square invertible a.
std::vector<Symbol> Solve(const PrimeField& f, const Matrix& a,
                          std::span<const Symbol> b);

// Y x Z generator of a (Y, Z) MDS code: the Vandermonde matrix
// V(i, j) = alpha_i^j over the distinct nonzero points alpha_i = i + 1. Any
// Z rows are linearly independent.
struct MdsGenerator {
  std::size_t rows = 0;  // Y
  std::size_t cols = 0;  // Z
  Matrix matrix;
};

// Error(kFieldTooSmall) unless q > Y; Error(kInvalidParams) unless Y >= Z >= 1.
MdsGenerator MakeMdsGenerator(std::size_t rows, std::size_t cols,
                              const PrimeField& f);

// Uniform invertible n x n matrix (rejection on rank).
Matrix RandomFullRank(std::size_t n, const PrimeField& f, Rng& rng);

Matrix RandomMatrix(std::size_t rows, std::size_t cols, const PrimeField& f,
                    Rng& rng);

}  // namespace axstpir

#endif  // AXSTPIR_FIELD_H_
