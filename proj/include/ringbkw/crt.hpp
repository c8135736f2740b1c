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
#include <random>
#include <vector>

#include "ringbkw/poly.hpp"
#include "ringbkw/ring.hpp"

namespace ringbkw {

// Residue degree of q in the m-th cyclotomic field: every irreducible factor
// of x^n + 1 over F_q has this degree.
inline std::size_t residue_degree(const RingParams& ring) {
  return static_cast<std::size_t>(
      multiplicative_order(ring.q(), static_cast<std::int64_t>(ring.m())));
}

// Monic irreducible factors of x^n + 1 over F_q, sorted lexicographically by
// coefficient vector. Equal-degree splitting (Cantor-Zassenhaus); the result
// does not depend on the seed, only the work done to get there does.
inline std::vector<poly::Poly> crt_factors(const RingParams& ring, std::uint64_t seed = 1) {
  const std::int64_t q = ring.q();
  const std::size_t d = residue_degree(ring);
  std::vector<poly::Poly> done;
  std::vector<poly::Poly> pending{poly::cyclotomic_two_power(ring.n())};
  std::mt19937_64 rng(seed);

  while (!pending.empty()) {
    poly::Poly f = std::move(pending.back());
    pending.pop_back();
    const auto deg = static_cast<std::size_t>(poly::degree(f));
    if (deg == d) {
      done.push_back(poly::make_monic(f, q));
      continue;
    }
    for (;;) {
      poly::Poly r(deg);
      for (auto& c : r) c = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(q));
      poly::trim(r);
      if (poly::degree(r) < 1) continue;
      // r^{(q^d - 1)/2} = (r^{1 + q + ... + q^{d-1}})^{(q-1)/2}
      poly::Poly t = poly::mod(r, f, q);
      poly::Poly acc = t;
      for (std::size_t i = 1; i < d; ++i) {
        t = poly::powmod(t, static_cast<std::uint64_t>(q), f, q);
        acc = poly::mulmod(acc, t, f, q);
      }
      acc = poly::powmod(acc, static_cast<std::uint64_t>((q - 1) / 2), f, q);
      poly::Poly h = poly::gcd(poly::sub(acc, poly::Poly{1}, q), f, q);
      const int dh = poly::degree(h);
      if (dh > 0 && static_cast<std::size_t>(dh) < deg) {
        pending.push_back(h);
        pending.push_back(poly::make_monic(poly::divmod(f, h, q).first, q));
        break;
      }
    }
  }
  std::sort(done.begin(), done.end(), [](const poly::Poly& a, const poly::Poly& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
  });
  return done;
}

// Image of x in F_q[x]/(g), as deg(g) centered coefficients.
inline std::vector<Coeff> quotient_map(const RingElement& x, const poly::Poly& g) {
  const std::int64_t q = x.params().q();
  const int dg = poly::degree(g);
  if (dg < 1) throw ParameterError("quotient_map: factor must have positive degree");
  const poly::Poly r = poly::mod(to_poly(x), g, q);
  std::vector<Coeff> out(static_cast<std::size_t>(dg), 0);
  for (std::size_t i = 0; i < r.size(); ++i) out[i] = center(r[i], q);
  return out;
}

// Product of two images in F_q[x]/(g).
inline std::vector<Coeff> quotient_mul(std::span<const Coeff> u, std::span<const Coeff> v,
                                       const poly::Poly& g, std::int64_t q) {
  poly::Poly pu(u.begin(), u.end()), pv(v.begin(), v.end());
  const poly::Poly r =
      poly::mod(poly::mul(poly::normalize(pu, q), poly::normalize(pv, q), q), g, q);
  std::vector<Coeff> out(static_cast<std::size_t>(poly::degree(g)), 0);
  for (std::size_t i = 0; i < r.size(); ++i) out[i] = center(r[i], q);
  return out;
}

}  // namespace ringbkw
