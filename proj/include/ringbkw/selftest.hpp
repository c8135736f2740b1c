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

#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "ringbkw/bkw.hpp"
#include "ringbkw/embedding.hpp"
#include "ringbkw/oracles.hpp"
#include "ringbkw/ring.hpp"
#include "ringbkw/sampling.hpp"
#include "ringbkw/tower.hpp"

// Invariant suites run by `ringbkw verify`.
namespace ringbkw::selftest {

struct SuiteResult {
  std::string name;
  std::uint64_t checks = 0;
  std::uint64_t failures = 0;
  std::string first_failure;

  bool passed() const { return failures == 0; }

  void check(bool ok, const std::string& what) {
    ++checks;
    if (!ok) {
      if (failures == 0) first_failure = what;
      ++failures;
    }
  }
};

using TraceFn = std::function<RingElement(const RingElement&, const TowerParams&)>;

struct Options {
  std::uint64_t seed = 1;
  std::size_t trials = 1000;   // random elements per parameter set
  std::size_t reductions = 20; // fuzzed reduction configs
  TraceFn trace = [](const RingElement& x, const TowerParams& t) { return ringbkw::trace(x, t); };
};

// The fast trace against the sum of Galois conjugates fixing S_q.
inline SuiteResult trace_suite(const Options& o) {
  SuiteResult r{"trace-vs-galois-sum", 0, 0, {}};
  Rng rng(o.seed, 1);
  for (auto [n, k] : std::vector<std::pair<std::size_t, std::size_t>>{{8, 8}, {16, 8}, {16, 4}, {32, 16}}) {
    const auto ring = RingParams::make(n, 17);
    const TowerParams t(ring, k);
    for (std::size_t i = 0; i < o.trials; ++i) {
      const RingElement x = uniform_element(ring, rng);
      r.check(o.trace(x, t) == oracle::galois_sum_trace(x, t),
              "n=" + std::to_string(n) + " k=" + std::to_string(k));
    }
  }
  return r;
}

inline SuiteResult gram_suite() {
  SuiteResult r{"gram-matrix", 0, 0, {}};
  for (std::size_t n : {4U, 8U, 16U, 32U, 64U}) {
    const auto g = zeta_gram_matrix(RingParams::make(n, 17));
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        const double want = i == j ? static_cast<double>(n) / 2.0 : 0.0;
        worst = std::max(worst, std::abs(g[i][j] - want));
      }
    }
    r.check(worst <= 1e-9, "n=" + std::to_string(n) + " deviation " + std::to_string(worst));
  }
  return r;
}

// Rotation by zeta^{n/B} keeps a zero prefix of j blocks zero.
inline SuiteResult zero_prefix_suite(const Options& o) {
  SuiteResult r{"rotation-keeps-zero-prefix", 0, 0, {}};
  Rng rng(o.seed, 2);
  for (std::size_t n : {8U, 16U, 32U}) {
    const auto ring = RingParams::make(n, 17);
    const auto& order = ring->prioritized_order();
    for (std::size_t b = 1; b < n; b *= 2) {
      for (std::size_t j = 0; j <= n / b; ++j) {
        for (std::size_t i = 0; i < o.trials; ++i) {
          RingElement x = uniform_element(ring, rng);
          for (std::size_t p = 0; p < j * b; ++p) x.mutable_coeffs()[order[p]] = 0;
          const RingElement y = mul_zeta_pow(x, static_cast<std::int64_t>(n / b));
          r.check(block_zero_prefix(y, j, b),
                  "n=" + std::to_string(n) + " B=" + std::to_string(b) + " j=" + std::to_string(j));
        }
      }
    }
  }
  return r;
}

// Seeded reductions over a spread of (n, q, B, variant, mode); the reducer
// itself also asserts the bounds after every feed.
inline SuiteResult row_bound_suite(const Options& o) {
  SuiteResult r{"table-row-bounds", 0, 0, {}};
  struct Shape {
    std::size_t n;
    std::int64_t q;
    std::size_t b;
  };
  const std::vector<Shape> shapes{{8, 5, 2}, {8, 17, 2}, {16, 3, 4}, {16, 5, 2}, {32, 3, 4}, {8, 7, 4}, {16, 7, 2}};
  // AD output grows with the product of row populations, so keep its chains short
  const std::vector<Shape> ad_shapes{{8, 5, 2}, {8, 17, 2}, {16, 3, 4}, {8, 7, 4}, {16, 5, 4}};
  Rng pick(o.seed, 3);
  for (std::size_t i = 0; i < o.reductions; ++i) {
    const auto variant = static_cast<bkw::Variant>(i % 3);
    const auto mode = (i / 3) % 2 == 0 ? bkw::Mode::od : bkw::Mode::ad;
    const Shape sh = mode == bkw::Mode::od ? shapes[i % shapes.size()] : ad_shapes[i % ad_shapes.size()];
    const auto ring = RingParams::make(sh.n, sh.q);
    const auto config = bkw::ReductionConfig::make(ring, sh.b, variant, mode);
    const auto bound = *config.row_bound();
    LweOracle oracle(uniform_element(ring, pick), ErrorDistribution(CoefficientDistribution::uniform({-1, 0, 1}, sh.q), ring),
                     o.seed * 1000 + i);
    // enough feeds to saturate table 1, small enough to keep AD cheap
    const std::size_t feeds = mode == bkw::Mode::od ? 3 * bound + 10 : bound / 2 + 10;
    const std::size_t inputs = feeds / config.rotations_per_input() + 1;
    std::string label = "n=" + std::to_string(sh.n) + " q=" + std::to_string(sh.q) + " B=" + std::to_string(sh.b) +
                        " " + bkw::to_string(variant) + "/" + bkw::to_string(mode);
    try {
      const auto res = bkw::run_reduction([&]() -> std::optional<Sample> { return oracle.draw(); }, inputs, config);
      for (std::size_t t = 0; t < res.stats.rows.size(); ++t) r.check(res.stats.rows[t] <= bound, label);
    } catch (const bkw::RowBoundViolation& e) {
      r.check(false, label + ": " + e.what());
    }
  }
  return r;
}

inline SuiteResult ntt_suite(const Options& o) {
  SuiteResult r{"ntt-vs-schoolbook", 0, 0, {}};
  Rng rng(o.seed, 4);
  for (auto [n, q] : std::vector<std::pair<std::size_t, std::int64_t>>{{8, 17}, {64, 257}, {256, 7681}}) {
    const auto ring = RingParams::make(n, q);
    for (std::size_t i = 0; i < o.trials / 10 + 1; ++i) {
      const RingElement x = uniform_element(ring, rng), y = uniform_element(ring, rng);
      r.check(mul_ntt(x, y) == mul_schoolbook(x, y), "n=" + std::to_string(n) + " q=" + std::to_string(q));
    }
  }
  return r;
}

inline std::vector<SuiteResult> run_all(const Options& o = {}) {
  return {trace_suite(o), gram_suite(), zero_prefix_suite(o), row_bound_suite(o), ntt_suite(o)};
}

}  // namespace ringbkw::selftest
