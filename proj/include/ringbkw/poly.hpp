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

#include <algorithm>
#include <cstdint>
#include <utility>
#include <vector>

#include "ringbkw/modular.hpp"

// Dense univariate polynomials over F_q, used for the non-negacyclic
// algorithms (extended gcd, factoring x^n+1, reduction modulo a CRT factor).
// Coefficients are stored lowest degree first as residues in [0, q).
namespace ringbkw::poly {

using Poly = std::vector<std::int64_t>;

inline void trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

// Degree of p; the zero polynomial has degree -1.
inline int degree(const Poly& p) {
  for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i) {
    if (p[static_cast<std::size_t>(i)] != 0) return i;
  }
  return -1;
}

inline bool is_zero(const Poly& p) { return degree(p) < 0; }

inline Poly normalize(Poly p, std::int64_t q) {
  for (auto& c : p) c = mod_positive(c, q);
  trim(p);
  return p;
}

inline Poly add(const Poly& a, const Poly& b, std::int64_t q) {
  Poly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = (r[i] + b[i]) % q;
  trim(r);
  return r;
}

inline Poly sub(const Poly& a, const Poly& b, std::int64_t q) {
  Poly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = mod_positive(r[i] - b[i], q);
  trim(r);
  return r;
}

inline Poly scale(const Poly& a, std::int64_t c, std::int64_t q) {
  Poly r(a.size());
  c = mod_positive(c, q);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] * c % q;
  trim(r);
  return r;
}

inline Poly mul(const Poly& a, const Poly& b, std::int64_t q) {
  if (is_zero(a) || is_zero(b)) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % q;
  }
  trim(r);
  return r;
}

// Returns (quotient, remainder); divisor must be nonzero.
inline std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b, std::int64_t q) {
  const int db = degree(b);
  if (db < 0) throw std::domain_error("poly::divmod: division by zero polynomial");
  Poly rem = a;
  trim(rem);
  const int da = degree(rem);
  if (da < db) return {Poly{}, rem};
  Poly quot(static_cast<std::size_t>(da - db + 1), 0);
  const std::int64_t lead_inv = mod_inverse(b[static_cast<std::size_t>(db)], q);
  for (int i = da; i >= db; --i) {
    const std::int64_t c = rem[static_cast<std::size_t>(i)] * lead_inv % q;
    if (c == 0) continue;
    quot[static_cast<std::size_t>(i - db)] = c;
    for (int j = 0; j <= db; ++j) {
      auto& slot = rem[static_cast<std::size_t>(i - db + j)];
      slot = mod_positive(slot - c * b[static_cast<std::size_t>(j)], q);
    }
  }
  trim(quot);
  trim(rem);
  return {quot, rem};
}

inline Poly mod(const Poly& a, const Poly& b, std::int64_t q) { return divmod(a, b, q).second; }

inline Poly make_monic(const Poly& a, std::int64_t q) {
  const int d = degree(a);
  if (d < 0) return {};
  return scale(a, mod_inverse(a[static_cast<std::size_t>(d)], q), q);
}

// Monic greatest common divisor.
inline Poly gcd(Poly a, Poly b, std::int64_t q) {
  trim(a);
  trim(b);
  while (!is_zero(b)) {
    Poly r = mod(a, b, q);
    a = std::move(b);
    b = std::move(r);
  }
  return make_monic(a, q);
}

struct ExtGcd {
  Poly g;  // monic gcd
  Poly u;  // u*a + v*b = g
  Poly v;
};

inline ExtGcd ext_gcd(const Poly& a, const Poly& b, std::int64_t q) {
  Poly old_r = normalize(a, q), r = normalize(b, q);
  Poly old_u{1}, u{}, old_v{}, v{1};
  while (!is_zero(r)) {
    auto [quot, rem] = divmod(old_r, r, q);
    old_r = std::exchange(r, rem);
    Poly nu = sub(old_u, mul(quot, u, q), q);
    old_u = std::exchange(u, nu);
    Poly nv = sub(old_v, mul(quot, v, q), q);
    old_v = std::exchange(v, nv);
  }
  const int d = degree(old_r);
  if (d < 0) return {Poly{}, old_u, old_v};
  const std::int64_t inv = mod_inverse(old_r[static_cast<std::size_t>(d)], q);
  return {scale(old_r, inv, q), scale(old_u, inv, q), scale(old_v, inv, q)};
}

inline Poly mulmod(const Poly& a, const Poly& b, const Poly& m, std::int64_t q) {
  return mod(mul(a, b, q), m, q);
}

inline Poly powmod(Poly base, std::uint64_t exp, const Poly& m, std::int64_t q) {
  Poly result = mod(Poly{1}, m, q);
  base = mod(base, m, q);
  while (exp > 0) {
    if (exp & 1U) result = mulmod(result, base, m, q);
    base = mulmod(base, base, m, q);
    exp >>= 1U;
  }
  return result;
}

// x^n + 1 as a residue polynomial.
inline Poly cyclotomic_two_power(std::size_t n) {
  Poly p(n + 1, 0);
  p[0] = 1;
  p[n] = 1;
  return p;
}

}  // namespace ringbkw::poly
