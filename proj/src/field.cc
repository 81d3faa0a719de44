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

#include "axstpir/field.h"

#include <limits>
#include <numeric>
#include <utility>

#include "axstpir/error.h"
#include "axstpir/model.h"

namespace axstpir {

PrimeField::PrimeField(std::uint64_t modulus) : q_(modulus) {
  if (!IsPrime(modulus) || modulus >= (std::uint64_t{1} << 32)) {
    throw Error(ErrorCode::kInvalidParams,
                "field modulus must be a prime below 2^32");
  }
}

Symbol PrimeField::Pow(Symbol base, std::uint64_t exponent) const {
  Symbol result = 1 % q_;
  base %= q_;
  while (exponent > 0) {
    if (exponent & 1u) result = Mul(result, base);
    base = Mul(base, base);
    exponent >>= 1;
  }
  return result;
}

Symbol PrimeField::Inv(Symbol a) const {
  if (a % q_ == 0) throw Error(ErrorCode::kDivideByZero, "inverse of zero");
  return Pow(a, q_ - 2);
}

Symbol PrimeField::Dot(std::span<const Symbol> a,
                       std::span<const Symbol> b) const {
  // Each product is < 2^64 / 4 for q < 2^32, so accumulate a few before
  // reducing.
  unsigned __int128 acc = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    acc += static_cast<unsigned __int128>(a[i]) * b[i];
  }
  return static_cast<Symbol>(acc % q_);
}

std::uint64_t Rng::Uniform(std::uint64_t bound) {
  const std::uint64_t limit =
      std::numeric_limits<std::uint64_t>::max() -
      std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t v;
  do {
    v = engine_();
  } while (v >= limit);
  return v % bound;
}

std::vector<std::size_t> Rng::Permutation(std::size_t n) {
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  for (std::size_t i = n; i > 1; --i) {
    std::swap(p[i - 1], p[Uniform(i)]);
  }
  return p;
}

Matrix Matrix::Identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

Matrix Matrix::RowSlice(std::size_t first, std::size_t count) const {
  Matrix out(count, cols_);
  for (std::size_t r = 0; r < count; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) out.at(r, c) = at(first + r, c);
  }
  return out;
}

Matrix Matrix::SelectRows(std::span<const std::size_t> indices) const {
  Matrix out(indices.size(), cols_);
  for (std::size_t r = 0; r < indices.size(); ++r) {
    for (std::size_t c = 0; c < cols_; ++c) out.at(r, c) = at(indices[r], c);
  }
  return out;
}

Matrix Matrix::Transposed() const {
  Matrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) out.at(c, r) = at(r, c);
  }
  return out;
}

Matrix Multiply(const PrimeField& f, const Matrix& a, const Matrix& b) {
  Matrix out(a.rows(), b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    const auto row = RowTimes(f, a.row(r), b);
    for (std::size_t c = 0; c < b.cols(); ++c) out.at(r, c) = row[c];
  }
  return out;
}

std::vector<Symbol> RowTimes(const PrimeField& f, std::span<const Symbol> row,
                             const Matrix& b) {
  std::vector<unsigned __int128> acc(b.cols(), 0);
  for (std::size_t k = 0; k < row.size(); ++k) {
    if (row[k] == 0) continue;
    const auto brow = b.row(k);
    for (std::size_t c = 0; c < b.cols(); ++c) {
      acc[c] += static_cast<unsigned __int128>(row[k]) * brow[c];
    }
  }
  std::vector<Symbol> out(b.cols());
  for (std::size_t c = 0; c < b.cols(); ++c) {
    out[c] = static_cast<Symbol>(acc[c] % f.modulus());
  }
  return out;
}

std::vector<Symbol> MatVec(const PrimeField& f, const Matrix& a,
                           std::span<const Symbol> x) {
  std::vector<Symbol> out(a.rows());
  for (std::size_t r = 0; r < a.rows(); ++r) out[r] = f.Dot(a.row(r), x);
  return out;
}

namespace {

// In-place reduced row echelon form; returns pivot columns.
std::vector<std::size_t> Eliminate(const PrimeField& f, Matrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t pivot_row = 0;
  for (std::size_t col = 0; col < m.cols() && pivot_row < m.rows(); ++col) {
    std::size_t sel = pivot_row;
    while (sel < m.rows() && m.at(sel, col) == 0) ++sel;
    if (sel == m.rows()) continue;
    if (sel != pivot_row) {
      for (std::size_t c = 0; c < m.cols(); ++c) {
        std::swap(m.at(sel, c), m.at(pivot_row, c));
      }
    }
    const Symbol inv = f.Inv(m.at(pivot_row, col));
    for (std::size_t c = col; c < m.cols(); ++c) {
      m.at(pivot_row, c) = f.Mul(m.at(pivot_row, c), inv);
    }
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == pivot_row) continue;
      const Symbol factor = m.at(r, col);
      if (factor == 0) continue;
      for (std::size_t c = col; c < m.cols(); ++c) {
        m.at(r, c) = f.Sub(m.at(r, c), f.Mul(factor, m.at(pivot_row, c)));
      }
    }
    pivots.push_back(col);
    ++pivot_row;
  }
  return pivots;
}

}  // namespace

std::size_t Rank(const PrimeField& f, Matrix m) {
  return Eliminate(f, m).size();
}

Matrix RowReduce(const PrimeField& f, Matrix m) {
  const std::size_t rank = Eliminate(f, m).size();
  return m.RowSlice(0, rank);
}

Matrix LeftKernel(const PrimeField& f, const Matrix& m) {
  // x * m = 0  <=>  m^T * x^T = 0: null space of m^T.
  Matrix t = m.Transposed();
  const std::vector<std::size_t> pivots = Eliminate(f, t);
  const std::size_t n = t.cols();
  std::vector<bool> is_pivot(n, false);
  for (std::size_t p : pivots) is_pivot[p] = true;
  std::vector<std::vector<Symbol>> basis;
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Symbol> v(n, 0);
    v[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) {
      v[pivots[r]] = f.Neg(t.at(r, free));
    }
    basis.push_back(std::move(v));
  }
  Matrix k(basis.size(), n);
  for (std::size_t r = 0; r < basis.size(); ++r) {
    for (std::size_t c = 0; c < n; ++c) k.at(r, c) = basis[r][c];
  }
  return RowReduce(f, std::move(k));
}

Matrix Inverse(const PrimeField& f, const Matrix& m) {
  const std::size_t n = m.rows();
  if (m.cols() != n) {
    throw Error(ErrorCode::kInvalidParams, "inverse of a non-square matrix");
  }
  Matrix aug(n, 2 * n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) aug.at(r, c) = m.at(r, c);
    aug.at(r, n + r) = 1;
  }
  const auto pivots = Eliminate(f, aug);
  if (pivots.size() < n || pivots[n - 1] != n - 1) {
    throw Error(ErrorCode::kDivideByZero, "matrix is singular");
  }
  Matrix inv(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) inv.at(r, c) = aug.at(r, n + c);
  }
  return inv;
}

std::vector<Symbol> Solve(const PrimeField& f, const Matrix& a,
                          std::span<const Symbol> b) {
  const std::size_t n = a.rows();
  if (a.cols() != n || b.size() != n) {
    throw Error(ErrorCode::kInvalidParams, "Solve needs a square system");
  }
  Matrix aug(n, n + 1);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) aug.at(r, c) = a.at(r, c);
    aug.at(r, n) = b[r];
  }
  const auto pivots = Eliminate(f, aug);
  if (pivots.size() < n || pivots[n - 1] != n - 1) {
    throw Error(ErrorCode::kDivideByZero, "system is singular");
  }
  std::vector<Symbol> x(n);
  for (std::size_t r = 0; r < n; ++r) x[r] = aug.at(r, n);
  return x;
}

MdsGenerator MakeMdsGenerator(std::size_t rows, std::size_t cols,
                              const PrimeField& f) {
  if (cols == 0 || rows < cols) {
    throw Error(ErrorCode::kInvalidParams, "MDS generator needs Y >= Z >= 1");
  }
  if (f.modulus() <= rows) {
    throw Error(ErrorCode::kFieldTooSmall,
                "q = " + std::to_string(f.modulus()) + " has fewer than " +
                    std::to_string(rows) + " distinct nonzero points");
  }
  MdsGenerator g{rows, cols, Matrix(rows, cols)};
  for (std::size_t i = 0; i < rows; ++i) {
    const Symbol alpha = static_cast<Symbol>(i + 1);
    Symbol power = 1;
    for (std::size_t j = 0; j < cols; ++j) {
      g.matrix.at(i, j) = power;
      power = f.Mul(power, alpha);
    }
  }
  return g;
}

Matrix RandomMatrix(std::size_t rows, std::size_t cols, const PrimeField& f,
                    Rng& rng) {
  Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) m.at(r, c) = rng.Uniform(f.modulus());
  }
  return m;
}

Matrix RandomFullRank(std::size_t n, const PrimeField& f, Rng& rng) {
  while (true) {
    Matrix m = RandomMatrix(n, n, f, rng);
    if (Rank(f, m) == n) return m;
  }
}

}  // namespace axstpir
