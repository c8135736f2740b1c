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

#include <algorithm>
#include <set>
#include <vector>

#include <gtest/gtest.h>

#include "ringbkw/oracles.hpp"
#include "ringbkw/sampling.hpp"
#include "ringbkw/tower.hpp"
#include "test_util.hpp"

namespace ringbkw {
namespace {

TEST(PrioritizedOrder, MatchesDisplayedBasis) {
  EXPECT_EQ(prioritized_order(*RingParams::make(8, 17)).order,
            (std::vector<std::size_t>{7, 3, 5, 1, 6, 2, 4, 0}));
  EXPECT_EQ(prioritized_order(*RingParams::make(2, 17)).order, (std::vector<std::size_t>{1, 0}));
  // zeta^{n-1}, zeta^{n/2-1}, zeta^{3n/4-1}, zeta^{n/4-1}, ..., zeta^{3n/4}, zeta^{n/4}, zeta^{n/2}, 1
  const auto order = prioritized_order(*RingParams::make(32, 17)).order;
  EXPECT_EQ(order[0], 31U);
  EXPECT_EQ(order[1], 15U);
  EXPECT_EQ(order[2], 23U);
  EXPECT_EQ(order[3], 7U);
  EXPECT_EQ(order[28], 24U);
  EXPECT_EQ(order[29], 8U);
  EXPECT_EQ(order[30], 16U);
  EXPECT_EQ(order[31], 0U);
}

TEST(PrioritizedOrder, SuffixesSpanSubrings) {
  for (std::size_t n : {2U, 4U, 8U, 16U, 64U, 256U}) {
    const auto order = prioritized_order(*RingParams::make(n, 17)).order;
    EXPECT_TRUE(std::is_permutation(order.begin(), order.end(),
                                    [&] {
                                      std::vector<std::size_t> id(n);
                                      for (std::size_t i = 0; i < n; ++i) id[i] = i;
                                      return id;
                                    }()
                                        .begin()));
    for (std::size_t b = 1; b <= n; b *= 2) {
      std::set<std::size_t> suffix(order.end() - static_cast<std::ptrdiff_t>(b), order.end());
      std::set<std::size_t> multiples;
      for (std::size_t e = 0; e < n; e += n / b) multiples.insert(e);
      EXPECT_EQ(suffix, multiples) << "n=" << n << " b=" << b;
    }
  }
}

TEST(Prioritized, ConversionsRoundTrip) {
  auto ring = RingParams::make(8, 17);
  auto top = to_prioritized(RingElement::zeta_power(ring, 7));
  EXPECT_EQ(top[0], 1);
  auto one = to_prioritized(RingElement::one(ring));
  EXPECT_EQ(one.back(), 1);
  Rng rng(1);
  for (int trial = 0; trial < 20; ++trial) {
    auto x = uniform_element(ring, rng);
    EXPECT_EQ(from_prioritized(ring, to_prioritized(x)), x);
  }
}

TEST(PrioritizedRotation, MatchesMulZetaPow) {
  auto ring = RingParams::make(16, 17);
  Rng rng(2);
  for (int h = -3; h < 40; ++h) {
    auto perm = prioritized_rotation(*ring, h);
    auto x = uniform_element(ring, rng);
    EXPECT_EQ(perm.apply(to_prioritized(x)), to_prioritized(mul_zeta_pow(x, h)));
  }
}

TEST(Trace, Examples) {
  auto ring = RingParams::make(8, 17);  // m = 16
  TowerParams t(ring, 8);
  EXPECT_EQ(t.subring_dim(), 4U);
  EXPECT_EQ(t.stride(), 2U);
  EXPECT_TRUE(trace(RingElement::zeta_power(ring, 3), t).is_zero());
  EXPECT_EQ(trace(RingElement::zeta_power(ring, 2), t),
            scalar_mul(RingElement::zeta_power(ring, 2), 2));
  EXPECT_EQ(trace(RingElement::one(ring), t), scalar_mul(RingElement::one(ring), 2));
  EXPECT_TRUE(normalized_trace(RingElement::zeta_power(ring, 5), t).is_zero());
  EXPECT_THROW(TowerParams(ring, 32), ParameterError);
  EXPECT_THROW(TowerParams(ring, 6), ParameterError);
}

TEST(Trace, GaloisSumAgreesWithProjection) {
  for (auto [n, k] : {std::pair{8, 8}, {16, 8}, {16, 4}, {32, 16}, {8, 2}, {16, 32}}) {
    auto ring = RingParams::make(n, 17);
    TowerParams t(ring, k);
    Rng rng(n * 31 + k);
    for (int trial = 0; trial < 200; ++trial) {
      auto x = uniform_element(ring, rng);
      EXPECT_EQ(oracle::galois_sum_trace(x, t), trace(x, t));
      auto nt = normalized_trace(x, t);
      EXPECT_EQ(scalar_mul(nt, static_cast<std::int64_t>(t.m() / t.k())), trace(x, t));
    }
  }
}

TEST(Trace, ProjectionProperties) {
  auto ring = RingParams::make(16, 17);
  Rng rng(5);
  for (std::size_t k : {2U, 4U, 8U, 16U, 32U}) {
    TowerParams t(ring, k);
    for (int trial = 0; trial < 30; ++trial) {
      auto x = uniform_element(ring, rng);
      auto u = normalized_trace(uniform_element(ring, rng), t);
      // S_q-linearity
      EXPECT_EQ(normalized_trace(mul(u, x), t), mul(u, normalized_trace(x, t)));
      // idempotence; fixes S_q
      EXPECT_EQ(normalized_trace(normalized_trace(x, t), t), normalized_trace(x, t));
      EXPECT_EQ(normalized_trace(u, t), u);
      for (std::size_t k2 = 2; k2 <= k; k2 *= 2) {
        TowerParams t2(ring, k2);
        EXPECT_EQ(normalized_trace(normalized_trace(x, t), t2), normalized_trace(x, t2));
      }
    }
  }
}

TEST(Subring, EmbedExtractAndClosure) {
  auto ring = RingParams::make(16, 17);
  TowerParams t = TowerParams::from_block_size(ring, 4);
  EXPECT_EQ(subring_embed(std::vector<Coeff>{1, 0, 0, 0}, t), RingElement::one(ring));
  Rng rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    auto x = subring_extract(normalized_trace(uniform_element(ring, rng), t), t);
    auto y = subring_extract(normalized_trace(uniform_element(ring, rng), t), t);
    EXPECT_EQ(subring_extract(subring_embed(x, t), t), x);
    EXPECT_TRUE(in_subring(mul(subring_embed(x, t), subring_embed(y, t)), t));
  }
  EXPECT_THROW(subring_extract(RingElement::zeta_power(ring, 1), t), ParameterError);
  EXPECT_THROW(subring_embed(std::vector<Coeff>{1, 2}, t), ParameterError);
  EXPECT_THROW(TowerParams::from_block_size(ring, 3), ParameterError);
}

TEST(BlockZeroPrefix, Examples) {
  auto ring = RingParams::make(16, 17);
  TowerParams t = TowerParams::from_block_size(ring, 4);
  Rng rng(4);
  auto s = normalized_trace(uniform_element(ring, rng), t);
  EXPECT_TRUE(block_zero_prefix(s, 16 / 4 - 1, 4));
  EXPECT_FALSE(block_zero_prefix(s, 16 / 4, 4) && !s.is_zero());
  const auto order = prioritized_order(*ring).order;
  EXPECT_FALSE(block_zero_prefix(RingElement::zeta_power(ring, order[0]), 1, 4));
  EXPECT_TRUE(block_zero_prefix(RingElement::zero(ring), 4, 4));
  EXPECT_THROW(block_zero_prefix(s, 5, 4), ParameterError);
}

// Rotation by zeta^{n/B} keeps any zero prefix made of whole blocks.
TEST(BlockZeroPrefix, RotationByStridePreservesZeroBlocks) {
  for (std::size_t n : {8U, 16U, 32U}) {
    auto ring = RingParams::make(n, 17);
    Rng rng(n);
    for (std::size_t b = 1; b <= n; b *= 2) {
      for (std::size_t j = 0; j <= n / b; ++j) {
        for (int trial = 0; trial < 20; ++trial) {
          auto v = to_prioritized(uniform_element(ring, rng));
          std::fill(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(j * b), 0);
          auto x = from_prioritized(ring, v);
          EXPECT_TRUE(block_zero_prefix(mul_zeta_pow(x, static_cast<std::int64_t>(n / b)), j, b));
        }
      }
    }
  }
}

}  // namespace
}  // namespace ringbkw
