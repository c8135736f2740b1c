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
#include <stdexcept>
#include <string>

// Scalar arithmetic in F_q. Residues are kept in centered form
// [-(q-1)/2, (q-1)/2]; all intermediate products go through int64 so q must
// stay below 2^31.
namespace ringbkw {

using Coeff = std::int32_t;

class ParameterError : public std::invalid_argument {
 public:
  explicit ParameterError(const std::string& what) : std::invalid_argument(what) {}
};

// Largest modulus accepted anywhere in the library.
inline constexpr std::int64_t kMaxModulus = (std::int64_t{1} << 31) - 1;

constexpr std::int64_t mod_positive(std::int64_t v, std::int64_t q) {
  std::int64_t r = v % q;
  return r < 0 ? r + q : r;
}

constexpr Coeff center(std::int64_t v, std::int64_t q) {
  std::int64_t r = mod_positive(v, q);
  if (r > (q - 1) / 2) r -= q;
  return static_cast<Coeff>(r);
}

constexpr std::int64_t mod_pow(std::int64_t base, std::uint64_t exp, std::int64_t q) {
  std::int64_t result = 1 % q;
  std::int64_t b = mod_positive(base, q);
  while (exp > 0) {
    if (exp & 1U) result = result * b % q;
    b = b * b % q;
    exp >>= 1U;
  }
  return result;
}

// Inverse of v modulo prime q; v must be nonzero mod q.
inline std::int64_t mod_inverse(std::int64_t v, std::int64_t q) {
  std::int64_t a = mod_positive(v, q);
  if (a == 0) throw std::domain_error("mod_inverse: zero has no inverse");
  std::int64_t old_r = a, r = q, old_s = 1, s = 0;
  while (r != 0) {
    std::int64_t quot = old_r / r;
    std::int64_t tmp = old_r - quot * r;
    old_r = r;
    r = tmp;
    tmp = old_s - quot * s;
    old_s = s;
    s = tmp;
  }
  if (old_r != 1) throw std::domain_error("mod_inverse: not invertible");
  return mod_positive(old_s, q);
}

constexpr bool is_prime(std::int64_t v) {
  if (v < 2) return false;
  if (v % 2 == 0) return v == 2;
  for (std::int64_t d = 3; d * d <= v; d += 2) {
    if (v % d == 0) return false;
  }
  return true;
}

constexpr bool is_power_of_two(std::int64_t v) { return v > 0 && (v & (v - 1)) == 0; }

constexpr int log2_exact(std::int64_t v) {
  int t = 0;
  while ((std::int64_t{1} << t) < v) ++t;
  return t;
}

// Multiplicative order of q modulo m (gcd(q, m) = 1 assumed).
inline std::int64_t multiplicative_order(std::int64_t q, std::int64_t m) {
  std::int64_t x = mod_positive(q, m);
  std::int64_t order = 1;
  while (x != 1 % m) {
    x = x * mod_positive(q, m) % m;
    ++order;
    if (order > m) throw std::domain_error("multiplicative_order: not a unit");
  }
  return order;
}

}  // namespace ringbkw
