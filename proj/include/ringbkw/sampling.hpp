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
#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "ringbkw/crt.hpp"
#include "ringbkw/ring.hpp"
#include "ringbkw/rng.hpp"
#include "ringbkw/tower.hpp"

namespace ringbkw {

// Gaussian tails are cut at this many standard deviations.
inline constexpr double kGaussianTailCut = 6.0;

// Distribution of a single zeta-basis coefficient over F_q.
class CoefficientDistribution {
 public:
  enum class Kind { gaussian, uniform, point_mass, table };

  // Discrete Gaussian with weight exp(-pi z^2 / r^2) on integers z, truncated
  // at kGaussianTailCut standard deviations (sigma = r / sqrt(2 pi)), folded
  // mod q and renormalized.
  static CoefficientDistribution gaussian(double width, std::int64_t q) {
    if (!(width > 0.0)) throw ParameterError("gaussian width must be positive");
    const double sigma = width / std::sqrt(2.0 * std::numbers::pi);
    const auto cut = static_cast<std::int64_t>(std::ceil(kGaussianTailCut * sigma));
    std::vector<double> pmf(static_cast<std::size_t>(q), 0.0);
    for (std::int64_t z = -cut; z <= cut; ++z) {
      const double w = std::exp(-std::numbers::pi * static_cast<double>(z * z) / (width * width));
      pmf[static_cast<std::size_t>(mod_positive(z, q))] += w;
    }
    CoefficientDistribution d(Kind::gaussian, q, std::move(pmf));
    d.width_ = width;
    return d;
  }

  static CoefficientDistribution uniform(const std::vector<std::int64_t>& support, std::int64_t q) {
    if (support.empty()) throw ParameterError("uniform distribution needs a nonempty support");
    std::vector<double> pmf(static_cast<std::size_t>(q), 0.0);
    for (std::int64_t v : support) pmf[static_cast<std::size_t>(mod_positive(v, q))] = 1.0;
    return CoefficientDistribution(Kind::uniform, q, std::move(pmf));
  }

  static CoefficientDistribution point_mass(std::int64_t value, std::int64_t q) {
    std::vector<double> pmf(static_cast<std::size_t>(q), 0.0);
    pmf[static_cast<std::size_t>(mod_positive(value, q))] = 1.0;
    return CoefficientDistribution(Kind::point_mass, q, std::move(pmf));
  }

  // pmf indexed by residue in [0, q); normalized on construction.
  static CoefficientDistribution from_pmf(std::vector<double> pmf) {
    const auto q = static_cast<std::int64_t>(pmf.size());
    return CoefficientDistribution(Kind::table, q, std::move(pmf));
  }

  // Weighted table on centered values, e.g. {{-1, .25}, {0, .5}, {1, .25}}.
  static CoefficientDistribution from_table(const std::vector<std::pair<std::int64_t, double>>& t,
                                            std::int64_t q) {
    std::vector<double> pmf(static_cast<std::size_t>(q), 0.0);
    for (const auto& [v, p] : t) {
      if (p < 0.0) throw ParameterError("negative probability in pmf table");
      pmf[static_cast<std::size_t>(mod_positive(v, q))] += p;
    }
    return CoefficientDistribution(Kind::table, q, std::move(pmf));
  }

  Kind kind() const { return kind_; }
  double width() const { return width_; }
  std::int64_t modulus() const { return q_; }
  const std::vector<double>& pmf() const { return pmf_; }
  double prob(std::int64_t v) const { return pmf_[static_cast<std::size_t>(mod_positive(v, q_))]; }

  // Centered support values, ascending.
  std::vector<Coeff> support() const {
    std::vector<Coeff> s;
    for (std::size_t r = 0; r < pmf_.size(); ++r) {
      if (pmf_[r] > 0.0) s.push_back(center(static_cast<std::int64_t>(r), q_));
    }
    std::sort(s.begin(), s.end());
    return s;
  }

  std::size_t support_size() const {
    return static_cast<std::size_t>(
        std::count_if(pmf_.begin(), pmf_.end(), [](double p) { return p > 0.0; }));
  }

  Coeff max_abs() const {
    Coeff best = 0;
    for (Coeff v : support()) best = std::max<Coeff>(best, static_cast<Coeff>(std::abs(v)));
    return best;
  }

  bool symmetric() const {
    for (std::int64_t r = 1; r < q_; ++r) {
      if (pmf_[static_cast<std::size_t>(r)] != pmf_[static_cast<std::size_t>(q_ - r)]) return false;
    }
    return true;
  }

  // Variance of the centered lift.
  double variance() const {
    double mean = 0.0, second = 0.0;
    for (std::size_t r = 0; r < pmf_.size(); ++r) {
      const double v = center(static_cast<std::int64_t>(r), q_);
      mean += pmf_[r] * v;
      second += pmf_[r] * v * v;
    }
    return second - mean * mean;
  }

  // Inverse-CDF draw over the support table.
  Coeff sample(Rng& rng) const {
    const double u = rng.uniform_unit();
    auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
    if (it == cdf_.end()) --it;
    return cdf_values_[static_cast<std::size_t>(it - cdf_.begin())];
  }

  std::string describe() const {
    std::ostringstream os;
    switch (kind_) {
      case Kind::gaussian:
        os << "gaussian:" << width_;
        break;
      case Kind::point_mass:
        os << "point:" << support().front();
        break;
      case Kind::uniform: {
        os << "uniform:";
        bool first = true;
        for (Coeff v : support()) {
          os << (first ? "" : ",") << v;
          first = false;
        }
        break;
      }
      case Kind::table: {
        os << "pmf:";
        os.precision(17);
        bool first = true;
        for (Coeff v : support()) {
          os << (first ? "" : ",") << v << '=' << prob(v);
          first = false;
        }
        break;
      }
    }
    return os.str();
  }

 private:
  CoefficientDistribution(Kind kind, std::int64_t q, std::vector<double> pmf)
      : kind_(kind), q_(q), pmf_(std::move(pmf)) {
    if (q_ < 2) throw ParameterError("distribution modulus too small");
    double total = 0.0;
    for (double p : pmf_) total += p;
    if (!(total > 0.0)) throw ParameterError("distribution has zero total mass");
    for (auto& p : pmf_) p /= total;
    double acc = 0.0;
    for (Coeff v : support()) {
      acc += prob(v);
      cdf_.push_back(acc);
      cdf_values_.push_back(v);
    }
  }

  Kind kind_;
  std::int64_t q_;
  double width_ = 0.0;
  std::vector<double> pmf_;
  std::vector<double> cdf_;
  std::vector<Coeff> cdf_values_;
};

// Parses "gaussian:<r>", "uniform:<v>,<v>,...", "point:<v>" or
// "pmf:<v>=<p>,<v>=<p>,...".
inline CoefficientDistribution parse_distribution(const std::string& spec, std::int64_t q) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos) throw ParameterError("bad distribution spec '" + spec + "'");
  const std::string kind = spec.substr(0, colon);
  const std::string body = spec.substr(colon + 1);
  std::vector<std::string> items;
  std::stringstream ss(body);
  for (std::string item; std::getline(ss, item, ',');) {
    if (!item.empty()) items.push_back(item);
  }
  try {
    if (kind == "gaussian") return CoefficientDistribution::gaussian(std::stod(body), q);
    if (kind == "point") return CoefficientDistribution::point_mass(std::stoll(body), q);
    if (kind == "uniform") {
      std::vector<std::int64_t> support;
      for (const auto& it : items) support.push_back(std::stoll(it));
      return CoefficientDistribution::uniform(support, q);
    }
    if (kind == "pmf") {
      std::vector<std::pair<std::int64_t, double>> table;
      for (const auto& it : items) {
        const auto eq = it.find('=');
        if (eq == std::string::npos) throw ParameterError("pmf entry needs value=prob");
        table.emplace_back(std::stoll(it.substr(0, eq)), std::stod(it.substr(eq + 1)));
      }
      return CoefficientDistribution::from_table(table, q);
    }
  } catch (const std::logic_error& e) {
    if (dynamic_cast<const ParameterError*>(&e) != nullptr) throw;
    throw ParameterError("bad distribution spec '" + spec + "'");
  }
  throw ParameterError("unknown distribution kind '" + kind + "'");
}

// pmf (indexed by residue) of X + Y mod q for independent X, Y.
inline std::vector<double> convolve_mod(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t q = x.size();
  std::vector<double> out(q, 0.0);
  for (std::size_t i = 0; i < q; ++i) {
    if (x[i] == 0.0) continue;
    for (std::size_t j = 0; j < q; ++j) {
      if (y[j] == 0.0) continue;
      out[(i + j) % q] += x[i] * y[j];
    }
  }
  return out;
}

// Distribution of the sum of `count` independent draws from chi (for
// symmetric chi this is also any signed sum).
inline CoefficientDistribution sum_distribution(const CoefficientDistribution& chi,
                                                std::uint64_t count) {
  if (count == 0) return CoefficientDistribution::point_mass(0, chi.modulus());
  std::vector<double> result;
  std::vector<double> base = chi.pmf();
  bool have = false;
  while (count > 0) {
    if (count & 1U) {
      result = have ? convolve_mod(result, base) : base;
      have = true;
    }
    count >>= 1U;
    if (count > 0) base = convolve_mod(base, base);
  }
  return CoefficientDistribution::from_pmf(std::move(result));
}

// Weights (indexed by residue) of sum_{i < count} c^i X_i with X_i iid of
// weight w. Works for any additive weight type, so integer counts give an
// exact rational result.
template <typename Weight>
std::vector<Weight> scaled_sum_weights(const std::vector<Weight>& w, std::int64_t c,
                                       std::size_t count) {
  const auto q = static_cast<std::int64_t>(w.size());
  std::vector<Weight> acc(w.size(), Weight{});
  acc[0] = Weight{1};
  std::int64_t scale = 1;
  for (std::size_t i = 0; i < count; ++i) {
    std::vector<Weight> scaled(w.size(), Weight{});
    for (std::int64_t r = 0; r < q; ++r) {
      scaled[static_cast<std::size_t>(r * scale % q)] += w[static_cast<std::size_t>(r)];
    }
    std::vector<Weight> next(w.size(), Weight{});
    for (std::int64_t a = 0; a < q; ++a) {
      if (acc[static_cast<std::size_t>(a)] == Weight{}) continue;
      for (std::int64_t b = 0; b < q; ++b) {
        if (scaled[static_cast<std::size_t>(b)] == Weight{}) continue;
        next[static_cast<std::size_t>((a + b) % q)] +=
            acc[static_cast<std::size_t>(a)] * scaled[static_cast<std::size_t>(b)];
      }
    }
    acc = std::move(next);
    scale = scale * mod_positive(c, q) % q;
  }
  return acc;
}

struct TransportData {
  std::int64_t root;   // rho(zeta^{k'}) as a residue in [0, q)
  std::size_t terms;   // n / k'
};

// Checks the hypotheses for pushing a zeta-basis error through the CRT map
// onto F_q[x]/(g) and returns rho(zeta^{k'}) with k' = deg g.
inline TransportData transport_data(const RingParams& ring, const poly::Poly& g) {
  const std::int64_t q = ring.q();
  if (q % 4 != 1) throw ParameterError("transport_pmf requires q = 1 mod 4");
  const int dg = poly::degree(g);
  if (dg < 1 || ring.n() % static_cast<std::size_t>(dg) != 0) {
    throw ParameterError("transport_pmf: factor degree must divide n");
  }
  poly::Poly xk(static_cast<std::size_t>(dg) + 1, 0);
  xk[static_cast<std::size_t>(dg)] = 1;
  const poly::Poly r = poly::mod(xk, g, q);
  if (poly::degree(r) > 0) throw ParameterError("transport_pmf: rho(zeta^k') is not in F_q");
  return {r.empty() ? 0 : r[0], ring.n() / static_cast<std::size_t>(dg)};
}

// Coefficient distribution of rho(e) on the zeta-basis of F_q[x]/(g) when e
// has iid chi0 coefficients: chi0' = sum_i rho(zeta^{k'})^i chi0.
inline CoefficientDistribution transport_pmf(const CoefficientDistribution& chi0,
                                             const RingParams& ring, const poly::Poly& g) {
  if (chi0.modulus() != ring.q()) throw ParameterError("transport_pmf: modulus mismatch");
  const auto data = transport_data(ring, g);
  return CoefficientDistribution::from_pmf(scaled_sum_weights(chi0.pmf(), data.root, data.terms));
}

inline RingElement uniform_element(const RingPtr& ring, Rng& rng) {
  std::vector<Coeff> c(ring->n());
  for (auto& v : c) {
    v = center(static_cast<std::int64_t>(rng.uniform_below(static_cast<std::uint64_t>(ring->q()))),
               ring->q());
  }
  return RingElement(ring, std::move(c));
}

inline RingElement sample_element(const RingPtr& ring, const CoefficientDistribution& chi,
                                  Rng& rng) {
  std::vector<Coeff> c(ring->n());
  for (auto& v : c) v = chi.sample(rng);
  return RingElement(ring, std::move(c));
}

// Error on R_q with iid coefficients from `base` on the zeta-basis.
class ErrorDistribution {
 public:
  ErrorDistribution(CoefficientDistribution base, RingPtr ring)
      : base_(std::move(base)), ring_(std::move(ring)) {
    if (base_.modulus() != ring_->q()) throw ParameterError("error distribution modulus mismatch");
  }

  const CoefficientDistribution& base() const { return base_; }
  const RingPtr& ring() const { return ring_; }
  RingElement sample(Rng& rng) const { return sample_element(ring_, base_, rng); }

 private:
  CoefficientDistribution base_;
  RingPtr ring_;
};

struct Sample {
  RingElement a;
  RingElement b;
  // Number of BKW subtraction levels applied (0 for a fresh sample).
  int depth = 0;
  // Number of fresh error draws combined (with signs) in each coefficient of
  // the error; 1 for a fresh sample.
  std::uint64_t terms = 1;
};

// Restriction of a to the multiplicative coset a0 * S_q.
struct CosetRestriction {
  RingElement a0;
  TowerParams tower;
};

inline bool in_coset(const RingElement& a, const CosetRestriction& coset) {
  const auto a0_inv = inverse(coset.a0);
  if (!a0_inv) return false;
  return in_subring(mul(a, *a0_inv), coset.tower);
}

class LweOracle {
 public:
  LweOracle(RingElement secret, ErrorDistribution error, std::uint64_t seed,
            std::optional<CosetRestriction> restriction = std::nullopt)
      : secret_(std::move(secret)), error_(std::move(error)), restriction_(std::move(restriction)),
        rng_(seed, 0x0a11ce) {
    if (!secret_.params().same_as(*error_.ring())) throw ParameterError("oracle ring mismatch");
    if (restriction_) {
      if (!is_invertible(restriction_->a0)) throw ParameterError("coset a0 is not invertible");
      if (!is_invertible(normalized_trace(restriction_->a0, restriction_->tower))) {
        throw ParameterError("trace of coset a0 is not invertible");
      }
    }
  }

  const RingElement& secret() const { return secret_; }
  const ErrorDistribution& error() const { return error_; }
  const std::optional<CosetRestriction>& restriction() const { return restriction_; }

  Sample draw() {
    const RingPtr& ring = secret_.ring();
    RingElement a = uniform_element(ring, rng_);
    if (restriction_) {
      a = mul(restriction_->a0, normalized_trace(a, restriction_->tower));
    }
    RingElement e = error_.sample(rng_);
    RingElement b = add(mul(a, secret_), e);
    return Sample{std::move(a), std::move(b), 0, 1};
  }

 private:
  RingElement secret_;
  ErrorDistribution error_;
  std::optional<CosetRestriction> restriction_;
  Rng rng_;
};

enum class RotateMode { both, b_only };

// both:   (zeta^j a, zeta^j b), same secret.
// b_only: (a, zeta^j b), a sample for secret zeta^j s.
inline Sample rotate_sample(const Sample& x, std::int64_t j, RotateMode which = RotateMode::both) {
  Sample out = x;
  if (which == RotateMode::both) out.a = mul_zeta_pow(x.a, j);
  out.b = mul_zeta_pow(x.b, j);
  return out;
}

// Rotation of a coset-restricted sample; the coset moves to zeta^j a0 S_q.
inline std::pair<Sample, CosetRestriction> coset_rotate(const Sample& x, std::int64_t j,
                                                        const CosetRestriction& coset) {
  return {rotate_sample(x, j, RotateMode::both),
          CosetRestriction{mul_zeta_pow(coset.a0, j), coset.tower}};
}

}  // namespace ringbkw
