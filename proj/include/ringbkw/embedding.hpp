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

#include <complex>
#include <numbers>
#include <vector>

#include "ringbkw/ring.hpp"

// Floating-point diagnostics: the canonical embedding of a centered integer
// lift and the scaled trace pairing on it.
namespace ringbkw {

// sigma_t(x) = sum_i x_i w^{t i}, w = exp(2 pi i / 2n), for the n odd t in
// [1, 2n), in increasing t.
inline std::vector<std::complex<double>> canonical_embedding(const RingElement& x) {
  const std::size_t n = x.size();
  const double base = std::numbers::pi / static_cast<double>(n);
  std::vector<std::complex<double>> out;
  out.reserve(n);
  for (std::size_t t = 1; t < 2 * n; t += 2) {
    std::complex<double> acc{0.0, 0.0};
    for (std::size_t i = 0; i < n; ++i) {
      if (x[i] == 0) continue;
      const double angle = base * static_cast<double>((t * i) % (2 * n));
      acc += static_cast<double>(x[i]) * std::polar(1.0, angle);
    }
    out.push_back(acc);
  }
  return out;
}

// <x, y> = 1/2 sum over all complex embeddings of Re(sigma(x) conj(sigma(y))).
// There are no real embeddings for n >= 2.
inline double embedding_pairing(const RingElement& x, const RingElement& y) {
  const auto sx = canonical_embedding(x);
  const auto sy = canonical_embedding(y);
  double acc = 0.0;
  for (std::size_t i = 0; i < sx.size(); ++i) acc += (sx[i] * std::conj(sy[i])).real();
  return acc / 2.0;
}

// Gram matrix of the zeta-basis under embedding_pairing.
inline std::vector<std::vector<double>> zeta_gram_matrix(const RingPtr& ring) {
  const std::size_t n = ring->n();
  std::vector<RingElement> basis;
  basis.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    basis.push_back(RingElement::zeta_power(ring, static_cast<std::int64_t>(i)));
  }
  std::vector<std::vector<double>> gram(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) gram[i][j] = embedding_pairing(basis[i], basis[j]);
  }
  return gram;
}

}  // namespace ringbkw
