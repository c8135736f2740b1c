/*
 * Copyright 2026 The ringbkw Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ringbkw/modular.hpp"

namespace ringbkw::linalg {

// Dense row-major matrix over F_q with residues in [0, q).
class Matrix {
 public:
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::int64_t& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  std::int64_t operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

 private:
  std::size_t rows_, cols_;
  std::vector<std::int64_t> data_;
};

inline std::vector<std::int64_t> multiply(const Matrix& a, const std::vector<std::int64_t>& x, std::int64_t q) {
  if (x.size() != a.cols()) throw std::invalid_argument("linalg::multiply: dimension mismatch");
  std::vector<std::int64_t> out(a.rows(), 0);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    std::int64_t acc = 0;
    for (std::size_t c = 0; c < a.cols(); ++c) acc = (acc + a(r, c) * mod_positive(x[c], q)) % q;
    out[r] = acc;
  }
  return out;
}

// Solves a x = b for square a by Gauss-Jordan elimination with pivoting on
// the first nonzero entry. Returns nullopt when a is singular.
inline std::optional<std::vector<std::int64_t>> solve(Matrix a, std::vector<std::int64_t> b, std::int64_t q) {
  const std::size_t n = a.rows();
  if (a.cols() != n || b.size() != n) throw std::invalid_argument("linalg::solve: expected a square system");
  for (auto& v : b) v = mod_positive(v, q);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a(pivot, col) == 0) ++pivot;
    if (pivot == n) return std::nullopt;
    if (pivot != col) {
      for (std::size_t c = 0; c < n; ++c) std::swap(a(pivot, c), a(col, c));
      std::swap(b[pivot], b[col]);
    }
    const std::int64_t inv = mod_inverse(a(col, col), q);
    for (std::size_t c = col; c < n; ++c) a(col, c) = a(col, c) * inv % q;
    b[col] = b[col] * inv % q;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a(r, col) == 0) continue;
      const std::int64_t f = a(r, col);
      for (std::size_t c = col; c < n; ++c) a(r, c) = mod_positive(a(r, c) - f * a(col, c), q);
      b[r] = mod_positive(b[r] - f * b[col], q);
    }
  }
  return b;
}

inline std::size_t rank(Matrix a, std::int64_t q) {
  std::size_t r = 0;
  for (std::size_t col = 0; col < a.cols() && r < a.rows(); ++col) {
    std::size_t pivot = r;
    while (pivot < a.rows() && a(pivot, col) == 0) ++pivot;
    if (pivot == a.rows()) continue;
    for (std::size_t c = 0; c < a.cols(); ++c) std::swap(a(pivot, c), a(r, c));
    const std::int64_t inv = mod_inverse(a(r, col), q);
    for (std::size_t i = r + 1; i < a.rows(); ++i) {
      const std::int64_t f = a(i, col) * inv % q;
      for (std::size_t c = col; c < a.cols(); ++c) a(i, c) = mod_positive(a(i, c) - f * a(r, c), q);
    }
    ++r;
  }
  return r;
}

}  // namespace ringbkw::linalg
