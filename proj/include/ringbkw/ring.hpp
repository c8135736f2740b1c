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
#include <memory>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ringbkw/modular.hpp"
#include "ringbkw/ntt.hpp"
#include "ringbkw/poly.hpp"

namespace ringbkw {

namespace detail {

// Reverse of the bit-reversal permutation on log2(n) bits. Every suffix of
// length b (b a power of two) lists exactly the multiples of n/b.
inline std::vector<std::size_t> reversed_bit_reversal(std::size_t n) {
  const int bits = log2_exact(static_cast<std::int64_t>(n));
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t r = 0;
    for (int b = 0; b < bits; ++b) {
      if (i & (std::size_t{1} << b)) r |= std::size_t{1} << (bits - 1 - b);
    }
    order[n - 1 - i] = r;
  }
  return order;
}

}  // namespace detail

class RingParams;
using RingPtr = std::shared_ptr<const RingParams>;

// R_q = F_q[x]/(x^n + 1) with x playing the role of zeta, a primitive
// m = 2n-th root of unity. Instances are immutable and shared by every element
// built over them; the prioritized exponent order and the NTT plan (when
// q = 1 mod 2n) are computed once here.
class RingParams {
 public:
  static RingPtr make(std::size_t n, std::int64_t q, bool enable_ntt = true) {
    if (n < 2 || !is_power_of_two(static_cast<std::int64_t>(n))) {
      throw ParameterError("ring dimension n must be a power of two >= 2, got " +
                           std::to_string(n));
    }
    if (q < 3 || q > kMaxModulus || !is_prime(q)) {
      throw ParameterError("modulus q must be an odd prime below 2^31, got " +
                           std::to_string(q));
    }
    if ((2 * static_cast<std::int64_t>(n)) % q == 0) {
      throw ParameterError("modulus q ramifies (divides 2n)");
    }
    return RingPtr(new RingParams(n, q, enable_ntt));
  }

  std::size_t n() const { return n_; }
  std::size_t m() const { return 2 * n_; }
  std::int64_t q() const { return q_; }
  Coeff half() const { return static_cast<Coeff>((q_ - 1) / 2); }
  const NegacyclicNtt* ntt() const { return ntt_ ? &*ntt_ : nullptr; }
  const std::vector<std::size_t>& prioritized_order() const { return order_; }
  // position_of()[e] is the index of exponent e in prioritized_order().
  const std::vector<std::size_t>& prioritized_position() const { return position_; }

  bool same_as(const RingParams& other) const { return n_ == other.n_ && q_ == other.q_; }

 private:
  RingParams(std::size_t n, std::int64_t q, bool enable_ntt)
      : n_(n), q_(q), order_(detail::reversed_bit_reversal(n)), position_(n) {
    for (std::size_t i = 0; i < n; ++i) position_[order_[i]] = i;
    if (enable_ntt) ntt_ = NegacyclicNtt::create(n, q);
  }

  std::size_t n_;
  std::int64_t q_;
  std::vector<std::size_t> order_;
  std::vector<std::size_t> position_;
  std::optional<NegacyclicNtt> ntt_;
};

// Element of R_q on the zeta-basis: coeffs()[i] is the coefficient of zeta^i,
// stored centered.
class RingElement {
 public:
  explicit RingElement(RingPtr ring) : ring_(std::move(ring)), coeffs_(ring_->n(), 0) {}

  RingElement(RingPtr ring, std::vector<Coeff> coeffs)
      : ring_(std::move(ring)), coeffs_(std::move(coeffs)) {
    if (coeffs_.size() != ring_->n()) {
      throw ParameterError("RingElement: expected " + std::to_string(ring_->n()) +
                           " coefficients, got " + std::to_string(coeffs_.size()));
    }
    for (auto& c : coeffs_) c = center(c, ring_->q());
  }

  static RingElement from_integers(RingPtr ring, std::span<const std::int64_t> values) {
    std::vector<Coeff> c(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) c[i] = center(values[i], ring->q());
    return RingElement(std::move(ring), std::move(c));
  }

  static RingElement zero(RingPtr ring) { return RingElement(std::move(ring)); }

  static RingElement one(RingPtr ring) {
    RingElement e(std::move(ring));
    e.coeffs_[0] = 1;
    return e;
  }

  // zeta^h for any integer h.
  static RingElement zeta_power(RingPtr ring, std::int64_t h) {
    const auto n = static_cast<std::int64_t>(ring->n());
    std::int64_t e = mod_positive(h, 2 * n);
    RingElement out(std::move(ring));
    if (e < n) {
      out.coeffs_[static_cast<std::size_t>(e)] = 1;
    } else {
      out.coeffs_[static_cast<std::size_t>(e - n)] = -1;
    }
    return out;
  }

  const RingPtr& ring() const { return ring_; }
  const RingParams& params() const { return *ring_; }
  std::size_t size() const { return coeffs_.size(); }
  Coeff operator[](std::size_t i) const { return coeffs_[i]; }
  std::span<const Coeff> coeffs() const { return coeffs_; }
  // Raw mutable access; callers must keep entries centered.
  std::vector<Coeff>& mutable_coeffs() { return coeffs_; }

  bool is_zero() const {
    for (Coeff c : coeffs_) {
      if (c != 0) return false;
    }
    return true;
  }

  friend bool operator==(const RingElement& x, const RingElement& y) {
    return x.ring_->same_as(*y.ring_) && x.coeffs_ == y.coeffs_;
  }

 private:
  RingPtr ring_;
  std::vector<Coeff> coeffs_;
};

inline std::ostream& operator<<(std::ostream& os, const RingElement& x) {
  os << '[';
  for (std::size_t i = 0; i < x.size(); ++i) os << (i ? "," : "") << x[i];
  return os << ']';
}

inline void require_same_ring(const RingElement& x, const RingElement& y) {
  if (!x.params().same_as(y.params())) throw ParameterError("ring parameter mismatch");
}

inline RingElement add(const RingElement& x, const RingElement& y) {
  require_same_ring(x, y);
  const std::int64_t q = x.params().q();
  std::vector<Coeff> out(x.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = center(std::int64_t{x[i]} + y[i], q);
  }
  return RingElement(x.ring(), std::move(out));
}

inline RingElement sub(const RingElement& x, const RingElement& y) {
  require_same_ring(x, y);
  const std::int64_t q = x.params().q();
  std::vector<Coeff> out(x.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = center(std::int64_t{x[i]} - y[i], q);
  }
  return RingElement(x.ring(), std::move(out));
}

inline RingElement neg(const RingElement& x) {
  std::vector<Coeff> out(x.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = static_cast<Coeff>(-x[i]);
  return RingElement(x.ring(), std::move(out));
}

inline RingElement scalar_mul(const RingElement& x, std::int64_t c) {
  const std::int64_t q = x.params().q();
  const std::int64_t cc = mod_positive(c, q);
  std::vector<Coeff> out(x.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = center(x[i] * cc, q);
  return RingElement(x.ring(), std::move(out));
}

// Schoolbook product with the negacyclic wrap x^n = -1.
inline RingElement mul_schoolbook(const RingElement& x, const RingElement& y) {
  require_same_ring(x, y);
  const std::size_t n = x.size();
  const std::int64_t q = x.params().q();
  std::vector<std::int64_t> acc(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < n; ++j) {
      const std::int64_t p = std::int64_t{x[i]} * y[j] % q;
      const std::size_t k = i + j;
      if (k < n) {
        acc[k] += p;
      } else {
        acc[k - n] -= p;
      }
    }
    // keep the accumulators bounded for large q
    if ((i & 7U) == 7U) {
      for (auto& a : acc) a %= q;
    }
  }
  std::vector<Coeff> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = center(acc[i], q);
  return RingElement(x.ring(), std::move(out));
}

inline RingElement mul_ntt(const RingElement& x, const RingElement& y) {
  require_same_ring(x, y);
  const NegacyclicNtt* plan = x.params().ntt();
  if (plan == nullptr) throw ParameterError("mul_ntt: no NTT for this (n, q)");
  return RingElement(x.ring(), plan->multiply(x.coeffs(), y.coeffs()));
}

inline RingElement mul(const RingElement& x, const RingElement& y) {
  require_same_ring(x, y);
  if (x.params().ntt() != nullptr && x.size() >= 64) return mul_ntt(x, y);
  return mul_schoolbook(x, y);
}

// x * zeta^h as a signed cyclic shift.
inline RingElement mul_zeta_pow(const RingElement& x, std::int64_t h) {
  const std::size_t n = x.size();
  const auto e = static_cast<std::size_t>(mod_positive(h, 2 * static_cast<std::int64_t>(n)));
  const bool flip = e >= n;
  const std::size_t shift = flip ? e - n : e;
  std::vector<Coeff> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t k = i + shift;
    bool negate = flip;
    if (k >= n) {
      k -= n;
      negate = !negate;
    }
    out[k] = negate ? static_cast<Coeff>(-x[i]) : x[i];
  }
  return RingElement(x.ring(), std::move(out));
}

inline RingElement power(const RingElement& x, std::uint64_t e) {
  RingElement result = RingElement::one(x.ring());
  RingElement base = x;
  while (e > 0) {
    if (e & 1U) result = mul(result, base);
    base = mul(base, base);
    e >>= 1U;
  }
  return result;
}

inline poly::Poly to_poly(const RingElement& x) {
  poly::Poly p(x.coeffs().begin(), x.coeffs().end());
  return poly::normalize(std::move(p), x.params().q());
}

inline RingElement from_poly(const RingPtr& ring, const poly::Poly& p) {
  // p is reduced modulo x^n + 1 first
  const std::size_t n = ring->n();
  const std::int64_t q = ring->q();
  std::vector<std::int64_t> acc(n, 0);
  for (std::size_t i = 0; i < p.size(); ++i) {
    const std::size_t k = i % n;
    const bool negate = ((i / n) & 1U) != 0;
    acc[k] = mod_positive(acc[k] + (negate ? -p[i] : p[i]), q);
  }
  std::vector<Coeff> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = center(acc[i], q);
  return RingElement(ring, std::move(out));
}

// gcd of the polynomial representative with x^n + 1 over F_q.
inline poly::Poly gcd_with_modulus(const RingElement& x) {
  return poly::gcd(to_poly(x), poly::cyclotomic_two_power(x.size()), x.params().q());
}

// Multiplicative inverse via extended Euclid against x^n + 1; nullopt when x
// is a zero divisor.
inline std::optional<RingElement> inverse(const RingElement& x) {
  const std::int64_t q = x.params().q();
  const auto eg = poly::ext_gcd(to_poly(x), poly::cyclotomic_two_power(x.size()), q);
  if (poly::degree(eg.g) != 0) return std::nullopt;
  return from_poly(x.ring(), eg.u);
}

inline bool is_invertible(const RingElement& x) { return poly::degree(gcd_with_modulus(x)) == 0; }

inline RingElement operator+(const RingElement& x, const RingElement& y) { return add(x, y); }
inline RingElement operator-(const RingElement& x, const RingElement& y) { return sub(x, y); }
inline RingElement operator-(const RingElement& x) { return neg(x); }
inline RingElement operator*(const RingElement& x, const RingElement& y) { return mul(x, y); }

}  // namespace ringbkw
