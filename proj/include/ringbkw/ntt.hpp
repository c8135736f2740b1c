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
#include <span>
#include <vector>

#include "ringbkw/modular.hpp"

namespace ringbkw {

// Negacyclic number-theoretic transform of length n over F_q. Only exists
// when q = 1 mod 2n, i.e. F_q contains a primitive 2n-th root of unity psi.
// Multiplication in F_q[x]/(x^n+1) becomes a pointwise product after
// twisting coefficient i by psi^i.
class NegacyclicNtt {
 public:
  static std::optional<NegacyclicNtt> create(std::size_t n, std::int64_t q) {
    if (n == 0 || !is_power_of_two(static_cast<std::int64_t>(n))) return std::nullopt;
    const auto two_n = static_cast<std::int64_t>(2 * n);
    if (!is_prime(q) || (q - 1) % two_n != 0) return std::nullopt;
    const std::int64_t g = primitive_root(q);
    const std::int64_t psi = mod_pow(g, static_cast<std::uint64_t>((q - 1) / two_n), q);
    return NegacyclicNtt(n, q, psi);
  }

  std::size_t size() const { return n_; }
  std::int64_t modulus() const { return q_; }
  std::int64_t psi() const { return psi_; }

  std::vector<Coeff> multiply(std::span<const Coeff> x, std::span<const Coeff> y) const {
    std::vector<std::int64_t> fx(n_), fy(n_);
    for (std::size_t i = 0; i < n_; ++i) {
      fx[i] = mod_positive(x[i], q_) * psi_pow_[i] % q_;
      fy[i] = mod_positive(y[i], q_) * psi_pow_[i] % q_;
    }
    transform(fx, omega_pow_);
    transform(fy, omega_pow_);
    for (std::size_t i = 0; i < n_; ++i) fx[i] = fx[i] * fy[i] % q_;
    transform(fx, omega_inv_pow_);
    std::vector<Coeff> out(n_);
    for (std::size_t i = 0; i < n_; ++i) {
      out[i] = center(fx[i] * n_inv_ % q_ * psi_inv_pow_[i], q_);
    }
    return out;
  }

 private:
  NegacyclicNtt(std::size_t n, std::int64_t q, std::int64_t psi)
      : n_(n), q_(q), psi_(psi), psi_pow_(n), psi_inv_pow_(n), omega_pow_(n / 2 + 1),
        omega_inv_pow_(n / 2 + 1) {
    const std::int64_t psi_inv = mod_inverse(psi, q);
    const std::int64_t omega = psi * psi % q;
    const std::int64_t omega_inv = psi_inv * psi_inv % q;
    std::int64_t p = 1, pi = 1;
    for (std::size_t i = 0; i < n; ++i) {
      psi_pow_[i] = p;
      psi_inv_pow_[i] = pi;
      p = p * psi % q;
      pi = pi * psi_inv % q;
    }
    std::int64_t w = 1, wi = 1;
    for (std::size_t i = 0; i <= n / 2; ++i) {
      omega_pow_[i] = w;
      omega_inv_pow_[i] = wi;
      w = w * omega % q;
      wi = wi * omega_inv % q;
    }
    n_inv_ = mod_inverse(static_cast<std::int64_t>(n), q);
  }

  static std::int64_t primitive_root(std::int64_t q) {
    std::vector<std::int64_t> factors;
    std::int64_t rest = q - 1;
    for (std::int64_t d = 2; d * d <= rest; ++d) {
      if (rest % d == 0) {
        factors.push_back(d);
        while (rest % d == 0) rest /= d;
      }
    }
    if (rest > 1) factors.push_back(rest);
    for (std::int64_t g = 2; g < q; ++g) {
      bool ok = true;
      for (std::int64_t f : factors) {
        if (mod_pow(g, static_cast<std::uint64_t>((q - 1) / f), q) == 1) {
          ok = false;
          break;
        }
      }
      if (ok) return g;
    }
    return 1;  // q = 2
  }

  // In-place cyclic DFT of length n_ with the given table of root powers
  // (w^0 .. w^{n/2}); iterative radix-2 with bit-reversed input ordering.
  void transform(std::vector<std::int64_t>& a, const std::vector<std::int64_t>& roots) const {
    const std::size_t n = n_;
    for (std::size_t i = 1, j = 0; i < n; ++i) {
      std::size_t bit = n >> 1U;
      for (; j & bit; bit >>= 1U) j ^= bit;
      j ^= bit;
      if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1U) {
      const std::size_t step = n / len;
      for (std::size_t start = 0; start < n; start += len) {
        for (std::size_t k = 0; k < len / 2; ++k) {
          const std::int64_t w = roots[k * step];
          const std::int64_t u = a[start + k];
          const std::int64_t v = a[start + k + len / 2] * w % q_;
          a[start + k] = (u + v) % q_;
          a[start + k + len / 2] = mod_positive(u - v, q_);
        }
      }
    }
  }

  std::size_t n_;
  std::int64_t q_;
  std::int64_t psi_;
  std::int64_t n_inv_ = 1;
  std::vector<std::int64_t> psi_pow_;
  std::vector<std::int64_t> psi_inv_pow_;
  std::vector<std::int64_t> omega_pow_;
  std::vector<std::int64_t> omega_inv_pow_;
};

}  // namespace ringbkw
