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

#include "ringbkw/ring.hpp"
#include "ringbkw/tower.hpp"

// Slow reference implementations used to cross-check the fast paths. They are
// part of the library (not just the tests) because `ringbkw verify` runs them.
namespace ringbkw::oracle {

// Tr(x) = sum over a = 1 mod k, 0 <= a < m of sigma_a(x).
inline RingElement galois_sum_trace(const RingElement& x, const TowerParams& t) {
  RingElement acc = RingElement::zero(x.ring());
  for (std::size_t a = 1; a < t.m(); a += t.k()) {
    acc = add(acc, galois_automorphism(x, static_cast<std::int64_t>(a)));
  }
  return acc;
}

}  // namespace ringbkw::oracle
