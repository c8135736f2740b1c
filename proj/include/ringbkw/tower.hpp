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
#include <span>
#include <string>
#include <vector>

#include "ringbkw/ring.hpp"

namespace ringbkw {

// The k-th cyclotomic subring S_q inside R_q (m = 2n, k | m, both powers of
// two). S_q has F_q-basis zeta^{i * stride}, 0 <= i < B, where B = k/2 and
// stride = m/k, and R_q is free over S_q with basis 1, zeta, ..., zeta^{stride-1}.
class TowerParams {
 public:
  TowerParams(RingPtr ring, std::size_t k) : ring_(std::move(ring)), k_(k) {
    if (k < 2 || k > ring_->m() || !is_power_of_two(static_cast<std::int64_t>(k))) {
      throw ParameterError("subring conductor k must be a power of two in [2, m], got " +
                           std::to_string(k));
    }
  }

  // Tower whose subring has dimension `block_size` over F_q.
  static TowerParams from_block_size(RingPtr ring, std::size_t block_size) {
    if (block_size == 0 || ring->n() % block_size != 0 ||
        !is_power_of_two(static_cast<std::int64_t>(block_size))) {
      throw ParameterError("block size must be a power of two dividing n, got " +
                           std::to_string(block_size));
    }
    return TowerParams(std::move(ring), 2 * block_size);
  }

  const RingPtr& ring() const { return ring_; }
  std::size_t n() const { return ring_->n(); }
  std::size_t m() const { return ring_->m(); }
  std::int64_t q() const { return ring_->q(); }
  std::size_t k() const { return k_; }
  std::size_t degree() const { return ring_->m() / k_; }  // [R : S] = m/k
  std::size_t subring_dim() const { return k_ / 2; }     // B
  std::size_t stride() const { return ring_->m() / k_; }  // n / B

 private:
  RingPtr ring_;
  std::size_t k_;
};

struct PrioritizedPermutation {
  // order[p] is the zeta-exponent placed at prioritized position p.
  std::vector<std::size_t> order;
};

inline PrioritizedPermutation prioritized_order(const RingParams& ring) {
  return {ring.prioritized_order()};
}

inline std::vector<Coeff> to_prioritized(const RingElement& x) {
  const auto& order = x.params().prioritized_order();
  std::vector<Coeff> out(x.size());
  for (std::size_t p = 0; p < out.size(); ++p) out[p] = x[order[p]];
  return out;
}

inline RingElement from_prioritized(const RingPtr& ring, std::span<const Coeff> v) {
  const auto& order = ring->prioritized_order();
  if (v.size() != ring->n()) throw ParameterError("from_prioritized: length mismatch");
  std::vector<Coeff> out(v.size());
  for (std::size_t p = 0; p < v.size(); ++p) out[order[p]] = v[p];
  return RingElement(ring, std::move(out));
}

// Multiplication by zeta^h expressed on prioritized coordinates:
// (zeta^h x)_prio[p] = sign[p] * x_prio[source[p]].
struct SignedPermutation {
  std::vector<std::size_t> source;
  std::vector<Coeff> sign;

  std::vector<Coeff> apply(std::span<const Coeff> v) const {
    std::vector<Coeff> out(v.size());
    for (std::size_t p = 0; p < v.size(); ++p) out[p] = static_cast<Coeff>(sign[p] * v[source[p]]);
    return out;
  }
};

inline SignedPermutation prioritized_rotation(const RingParams& ring, std::int64_t h) {
  const std::size_t n = ring.n();
  const auto e = static_cast<std::size_t>(mod_positive(h, static_cast<std::int64_t>(2 * n)));
  const auto& pos = ring.prioritized_position();
  SignedPermutation perm{std::vector<std::size_t>(n), std::vector<Coeff>(n)};
  for (std::size_t src = 0; src < n; ++src) {
    std::size_t t = src + e;
    Coeff sign = 1;
    while (t >= n) {
      t -= n;
      sign = static_cast<Coeff>(-sign);
    }
    perm.source[pos[t]] = pos[src];
    perm.sign[pos[t]] = sign;
  }
  return perm;
}

// Unnormalized trace Tr_{S_q}^{R_q}: (m/k) times the projection onto the
// exponents divisible by m/k.
inline RingElement trace(const RingElement& x, const TowerParams& t) {
  const std::size_t stride = t.stride();
  const std::int64_t q = x.params().q();
  std::vector<Coeff> out(x.size(), 0);
  for (std::size_t i = 0; i < x.size(); i += stride) {
    out[i] = center(static_cast<std::int64_t>(stride) * x[i], q);
  }
  return RingElement(x.ring(), std::move(out));
}

// (k/m) * trace: the coordinate projection onto S_q.
inline RingElement normalized_trace(const RingElement& x, const TowerParams& t) {
  const std::size_t stride = t.stride();
  std::vector<Coeff> out(x.size(), 0);
  for (std::size_t i = 0; i < x.size(); i += stride) out[i] = x[i];
  return RingElement(x.ring(), std::move(out));
}

inline bool in_subring(const RingElement& x, const TowerParams& t) {
  const std::size_t stride = t.stride();
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i % stride != 0 && x[i] != 0) return false;
  }
  return true;
}

// y[i] becomes the coefficient of zeta^{i * stride}.
inline RingElement subring_embed(std::span<const Coeff> y, const TowerParams& t) {
  if (y.size() != t.subring_dim()) throw ParameterError("subring_embed: length mismatch");
  std::vector<Coeff> out(t.n(), 0);
  for (std::size_t i = 0; i < y.size(); ++i) out[i * t.stride()] = center(y[i], t.q());
  return RingElement(t.ring(), std::move(out));
}

inline std::vector<Coeff> subring_extract(const RingElement& x, const TowerParams& t) {
  if (!in_subring(x, t)) {
    throw ParameterError("subring_extract: element is not supported on subring exponents");
  }
  std::vector<Coeff> out(t.subring_dim());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = x[i * t.stride()];
  return out;
}

// True iff the first blocks*blocksize prioritized coefficients are zero.
inline bool block_zero_prefix(const RingElement& x, std::size_t blocks, std::size_t blocksize) {
  if (blocks * blocksize > x.size()) throw ParameterError("block_zero_prefix: prefix exceeds n");
  const auto& order = x.params().prioritized_order();
  for (std::size_t p = 0; p < blocks * blocksize; ++p) {
    if (x[order[p]] != 0) return false;
  }
  return true;
}

// zeta -> zeta^a for odd a.
inline RingElement galois_automorphism(const RingElement& x, std::int64_t a) {
  const std::size_t n = x.size();
  const auto m = static_cast<std::int64_t>(2 * n);
  if (mod_positive(a, 2) == 0) throw ParameterError("galois_automorphism: a must be odd");
  std::vector<Coeff> out(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (x[i] == 0) continue;
    auto e = static_cast<std::size_t>(mod_positive(static_cast<std::int64_t>(i) * a, m));
    Coeff c = x[i];
    if (e >= n) {
      e -= n;
      c = static_cast<Coeff>(-c);
    }
    out[e] = center(std::int64_t{out[e]} + c, x.params().q());
  }
  return RingElement(x.ring(), std::move(out));
}

}  // namespace ringbkw
