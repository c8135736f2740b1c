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

#include <cmath>
#include <map>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "ringbkw/crt.hpp"
#include "ringbkw/sampling.hpp"
#include "test_util.hpp"

namespace ringbkw {
namespace {

using testing::chi_square_accepts;

TEST(CoefficientDistribution, GaussianMomentsAndNormalization) {
  for (double r : {3.0, 8.0, 20.0}) {
    auto chi = CoefficientDistribution::gaussian(r, 10007);
    double total = 0.0;
    for (double p : chi.pmf()) total += p;
    EXPECT_NEAR(total, 1.0, 1e-12);
    EXPECT_NEAR(chi.variance(), r * r / (2 * std::numbers::pi), 1e-6 * r * r);
    EXPECT_TRUE(chi.symmetric());
    const double sigma = r / std::sqrt(2 * std::numbers::pi);
    EXPECT_EQ(chi.max_abs(), static_cast<Coeff>(std::ceil(6 * sigma)));
  }
  EXPECT_THROW(CoefficientDistribution::gaussian(0.0, 17), ParameterError);
}

TEST(CoefficientDistribution, ParseAndDescribe) {
  auto g = parse_distribution("gaussian:3.5", 17);
  EXPECT_EQ(g.kind(), CoefficientDistribution::Kind::gaussian);
  auto u = parse_distribution("uniform:-1,0,1", 17);
  EXPECT_EQ(u.support(), (std::vector<Coeff>{-1, 0, 1}));
  EXPECT_DOUBLE_EQ(u.prob(1), 1.0 / 3);
  auto p = parse_distribution("point:0", 17);
  EXPECT_EQ(p.support_size(), 1U);
  auto t = parse_distribution("pmf:-1=0.25,0=0.5,1=0.25", 17);
  EXPECT_DOUBLE_EQ(t.prob(-1), 0.25);
  EXPECT_DOUBLE_EQ(t.prob(16), 0.25);
  EXPECT_EQ(parse_distribution(t.describe(), 17).pmf(), t.pmf());
  EXPECT_EQ(parse_distribution(u.describe(), 17).pmf(), u.pmf());
  EXPECT_THROW(parse_distribution("gauss", 17), ParameterError);
  EXPECT_THROW(parse_distribution("laplace:2", 17), ParameterError);
  EXPECT_THROW(parse_distribution("pmf:1", 17), ParameterError);
  EXPECT_THROW(parse_distribution("gaussian:abc", 17), ParameterError);
}

TEST(CoefficientDistribution, SumDistributionIsBinomialForTernary) {
  auto chi = parse_distribution("pmf:-1=0.25,0=0.5,1=0.25", 97);
  // sum of L such draws = Binomial(2L, 1/2) - L
  for (std::uint64_t L : {1U, 2U, 4U, 8U}) {
    auto s = sum_distribution(chi, L);
    for (std::int64_t v = -static_cast<std::int64_t>(L); v <= static_cast<std::int64_t>(L); ++v) {
      double binom = 1.0;
      const std::uint64_t k = static_cast<std::uint64_t>(v + static_cast<std::int64_t>(L));
      for (std::uint64_t i = 0; i < k; ++i) binom = binom * static_cast<double>(2 * L - i) / static_cast<double>(i + 1);
      EXPECT_NEAR(s.prob(v), binom / std::pow(2.0, 2.0 * static_cast<double>(L)), 1e-12);
    }
  }
  EXPECT_EQ(sum_distribution(chi, 0).support(), std::vector<Coeff>{0});
}

TEST(LweOracle, ZeroErrorAndDeterminism) {
  auto ring = RingParams::make(16, 17);
  Rng rng(1);
  auto s = uniform_element(ring, rng);
  ErrorDistribution zero(CoefficientDistribution::point_mass(0, 17), ring);
  LweOracle oracle(s, zero, 42);
  LweOracle twin(s, zero, 42);
  for (int i = 0; i < 20; ++i) {
    auto x = oracle.draw();
    EXPECT_TRUE(sub(x.b, mul(x.a, s)).is_zero());
    EXPECT_EQ(x.depth, 0);
    auto y = twin.draw();
    EXPECT_EQ(x.a, y.a);
    EXPECT_EQ(x.b, y.b);
  }
}

TEST(LweOracle, CosetRestriction) {
  auto ring = RingParams::make(16, 17);
  auto tower = TowerParams::from_block_size(ring, 4);
  Rng rng(2);
  auto s = uniform_element(ring, rng);
  ErrorDistribution err(parse_distribution("uniform:-1,0,1", 17), ring);
  LweOracle plain_coset(s, err, 3, CosetRestriction{RingElement::one(ring), tower});
  for (int i = 0; i < 20; ++i) EXPECT_TRUE(in_subring(plain_coset.draw().a, tower));

  RingElement a0 = uniform_element(ring, rng);
  while (!is_invertible(a0) || !is_invertible(normalized_trace(a0, tower))) {
    a0 = uniform_element(ring, rng);
  }
  CosetRestriction coset{a0, tower};
  LweOracle oracle(s, err, 4, coset);
  for (int i = 0; i < 20; ++i) EXPECT_TRUE(in_coset(oracle.draw().a, coset));

  EXPECT_THROW(LweOracle(s, err, 5, CosetRestriction{RingElement::zero(ring), tower}), ParameterError);
  // invertible a0 whose trace vanishes: a0 = zeta
  EXPECT_THROW(LweOracle(s, err, 5, CosetRestriction{RingElement::zeta_power(ring, 1), tower}),
               ParameterError);
}

TEST(LweOracle, ErrorCoefficientsFollowChi0) {
  auto ring = RingParams::make(8, 17);
  Rng rng(9);
  auto s = uniform_element(ring, rng);
  for (const char* spec : {"pmf:-1=0.25,0=0.5,1=0.25", "gaussian:4", "uniform:-2,-1,0,1,2"}) {
    auto chi = parse_distribution(spec, 17);
    LweOracle oracle(s, ErrorDistribution(chi, ring), 77);
    std::vector<std::uint64_t> counts(17, 0);
    std::vector<std::uint64_t> rotated(17, 0);
    for (int i = 0; i < 100000 / 8; ++i) {
      auto x = oracle.draw();
      auto e = sub(x.b, mul(x.a, s));
      auto ze = mul_zeta_pow(e, 3);
      for (std::size_t c = 0; c < 8; ++c) {
        ++counts[static_cast<std::size_t>(mod_positive(e[c], 17))];
        ++rotated[static_cast<std::size_t>(mod_positive(ze[c], 17))];
      }
    }
    EXPECT_TRUE(chi_square_accepts(counts, chi.pmf())) << spec;
    EXPECT_TRUE(chi_square_accepts(rotated, chi.pmf())) << spec;
  }
}

TEST(RotateSample, Examples) {
  auto ring = RingParams::make(8, 17);
  Rng rng(5);
  auto s = uniform_element(ring, rng);
  auto chi = parse_distribution("uniform:-1,0,1", 17);
  LweOracle oracle(s, ErrorDistribution(chi, ring), 6);
  auto x = oracle.draw();
  auto same = rotate_sample(x, 0);
  EXPECT_EQ(same.a, x.a);
  EXPECT_EQ(same.b, x.b);
  auto back = rotate_sample(rotate_sample(x, 5), 16 - 5);
  EXPECT_EQ(back.a, x.a);
  EXPECT_EQ(back.b, x.b);
  auto rot = rotate_sample(x, 3);
  EXPECT_EQ(rot.depth, x.depth);
  const auto rot_residual = sub(rot.b, mul(rot.a, s));
  for (Coeff c : rot_residual.coeffs()) EXPECT_LE(std::abs(c), 1);

  auto b_only = rotate_sample(x, 1, RotateMode::b_only);
  EXPECT_EQ(b_only.a, x.a);
  auto residual = sub(b_only.b, mul(b_only.a, mul_zeta_pow(s, 1)));
  for (Coeff c : residual.coeffs()) EXPECT_LE(std::abs(c), 1);
}

TEST(CosetRotate, TracksCoset) {
  auto ring = RingParams::make(16, 17);
  auto tower = TowerParams::from_block_size(ring, 4);
  Rng rng(8);
  auto s = uniform_element(ring, rng);
  RingElement a0 = uniform_element(ring, rng);
  while (!is_invertible(a0) || !is_invertible(normalized_trace(a0, tower))) {
    a0 = uniform_element(ring, rng);
  }
  CosetRestriction coset{a0, tower};
  LweOracle oracle(s, ErrorDistribution(CoefficientDistribution::point_mass(0, 17), ring), 1, coset);
  auto x = oracle.draw();
  auto [same, same_coset] = coset_rotate(x, 0, coset);
  EXPECT_EQ(same.a, x.a);
  EXPECT_EQ(same_coset.a0, a0);
  for (int j : {1, 3, 7}) {
    auto [rot, rot_coset] = coset_rotate(x, j, coset);
    EXPECT_EQ(rot_coset.a0, mul_zeta_pow(a0, j));
    EXPECT_TRUE(in_coset(rot.a, rot_coset));
    EXPECT_TRUE(sub(rot.b, mul(rot.a, s)).is_zero());
    auto [back, back_coset] = coset_rotate(rot, 32 - j, rot_coset);
    EXPECT_EQ(back.a, x.a);
    EXPECT_EQ(back_coset.a0, a0);
  }
}

// Exact pushforward: enumerate every ternary error vector, weight it by the
// product of integer weights, map it through rho and tally each image
// coefficient.
std::vector<std::vector<std::int64_t>> brute_force_pushforward(const RingPtr& ring,
                                                               const poly::Poly& g,
                                                               const std::vector<std::int64_t>& w) {
  const std::int64_t q = ring->q();
  const std::size_t n = ring->n();
  const auto dg = static_cast<std::size_t>(poly::degree(g));
  std::vector<std::vector<std::int64_t>> tally(dg, std::vector<std::int64_t>(static_cast<std::size_t>(q), 0));
  std::vector<std::int64_t> digits(n, 0);  // index into {-1, 0, 1}
  for (;;) {
    std::vector<std::int64_t> e(n);
    std::int64_t weight = 1;
    for (std::size_t i = 0; i < n; ++i) {
      e[i] = digits[i] - 1;
      weight *= w[static_cast<std::size_t>(mod_positive(e[i], q))];
    }
    const auto image = quotient_map(RingElement::from_integers(ring, e), g);
    for (std::size_t j = 0; j < dg; ++j) tally[j][static_cast<std::size_t>(mod_positive(image[j], q))] += weight;
    std::size_t i = 0;
    while (i < n && ++digits[i] == 3) digits[i++] = 0;
    if (i == n) break;
  }
  return tally;
}

TEST(TransportPmf, MatchesBruteForcePushforward) {
  auto ring = RingParams::make(8, 5);  // m = 16, q = 5
  std::vector<std::int64_t> w(5, 0);
  w[4] = 1;  // -1
  w[0] = 2;
  w[1] = 1;
  auto chi0 = parse_distribution("pmf:-1=0.25,0=0.5,1=0.25", 5);
  for (const auto& g : crt_factors(*ring)) {
    const auto data = transport_data(*ring, g);
    EXPECT_EQ(data.terms, 2U);
    const auto exact = scaled_sum_weights(w, data.root, data.terms);
    const auto brute = brute_force_pushforward(ring, g, w);
    // every image coefficient has the same law; brute-force counts carry an
    // extra factor 4^{n - terms} from the coefficients that do not feed it
    const std::int64_t spare = 1 << (2 * (8 - 2));
    for (const auto& coeff_tally : brute) {
      for (std::size_t r = 0; r < 5; ++r) EXPECT_EQ(coeff_tally[r], exact[r] * spare);
    }
    const auto pmf = transport_pmf(chi0, *ring, g).pmf();
    for (std::size_t r = 0; r < 5; ++r) EXPECT_EQ(pmf[r], static_cast<double>(exact[r]) / 16.0);
  }
}

TEST(TransportPmf, ExamplesAndSupportGrowth) {
  auto r13 = RingParams::make(8, 13);
  auto chi0 = parse_distribution("uniform:-1,0,1", 13);
  for (const auto& g : crt_factors(*r13)) {
    auto zero = transport_pmf(CoefficientDistribution::point_mass(0, 13), *r13, g);
    EXPECT_EQ(zero.support(), std::vector<Coeff>{0});
    const auto data = transport_data(*r13, g);
    ASSERT_EQ(data.terms, 2U);
    // X0 + c X1 directly
    std::vector<double> direct(13, 0.0);
    for (int a : {-1, 0, 1}) {
      for (int b : {-1, 0, 1}) direct[static_cast<std::size_t>(mod_positive(a + data.root * b, 13))] += 1.0 / 9;
    }
    auto moved = transport_pmf(chi0, *r13, g);
    for (std::size_t r = 0; r < 13; ++r) EXPECT_NEAR(moved.pmf()[r], direct[r], 1e-15);
    EXPECT_NE(center(data.root, 13), 1);
    EXPECT_NE(center(data.root, 13), -1);
    EXPECT_EQ(moved.support_size(), 9U);
    EXPECT_GT(moved.support_size(), chi0.support_size());
  }
  auto r7 = RingParams::make(8, 7);
  EXPECT_THROW(transport_pmf(parse_distribution("uniform:-1,0,1", 7), *r7, crt_factors(*r7)[0]),
               ParameterError);
}

}  // namespace
}  // namespace ringbkw
