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

#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ringbkw/linalg.hpp"
#include "ringbkw/ring.hpp"
#include "ringbkw/sampling.hpp"
#include "ringbkw/tower.hpp"

// Splitting a Ring-LWE instance whose a values lie in a coset a0 S_q into
// m/k subring instances, one per rotation zeta^j of b, and recombining their
// secrets c_j = T(a0 zeta^j s) / T(a0) into s.
namespace ringbkw {

class CosetMembershipError : public std::invalid_argument {
 public:
  explicit CosetMembershipError(const std::string& what) : std::invalid_argument(what) {}
};

class SingularSystemError : public std::runtime_error {
 public:
  explicit SingularSystemError(const std::string& what) : std::runtime_error(what) {}
};

// A sample of the subring instance in subring coordinates: entry t is the
// coefficient of zeta^{t m/k}.
struct SubSample {
  std::vector<Coeff> a;
  std::vector<Coeff> b;
  int depth = 0;
  std::uint64_t terms = 1;
};

struct SubProblem {
  std::size_t j = 0;
  TowerParams tower;
  std::vector<SubSample> samples;
  // chi0; a reduced sample with `terms` draws has the terms-fold sum of it
  // in each coefficient (the projection keeps zeta-basis coordinates).
  std::optional<CoefficientDistribution> base_error;

  CoefficientDistribution error_for(std::uint64_t terms) const {
    if (!base_error) throw std::logic_error("SubProblem: no error distribution attached");
    return sum_distribution(*base_error, terms);
  }
};

namespace detail {

inline void require_trace_invertible(const CosetRestriction& coset) {
  if (!is_invertible(normalized_trace(coset.a0, coset.tower))) {
    throw ParameterError("trace of a0 is not invertible");
  }
}

}  // namespace detail

// (T(a), T(zeta^j b)) for a sample with a in a0 S_q; a valid sample for the
// secret c_j with error T(zeta^j e).
inline SubSample reduce_sample(const Sample& x, std::size_t j, const CosetRestriction& coset) {
  detail::require_trace_invertible(coset);
  if (!in_coset(x.a, coset)) throw CosetMembershipError("reduce_sample: a is not in a0 S_q");
  const auto& t = coset.tower;
  return SubSample{subring_extract(normalized_trace(x.a, t), t),
                   subring_extract(normalized_trace(mul_zeta_pow(x.b, static_cast<std::int64_t>(j)), t), t),
                   x.depth, x.terms};
}

// The secret of subproblem j, for planted-secret diagnostics.
inline std::vector<Coeff> subproblem_secret(const RingElement& s, std::size_t j, const CosetRestriction& coset) {
  const auto& t = coset.tower;
  const auto inv = inverse(normalized_trace(coset.a0, t));
  if (!inv) throw ParameterError("trace of a0 is not invertible");
  const RingElement num = normalized_trace(mul(coset.a0, mul_zeta_pow(s, static_cast<std::int64_t>(j))), t);
  return subring_extract(mul(num, *inv), t);
}

inline std::vector<SubProblem> build_subproblems(const std::vector<Sample>& samples, const CosetRestriction& coset,
                                                 std::optional<CoefficientDistribution> base_error = std::nullopt) {
  detail::require_trace_invertible(coset);
  const auto a0_inv = inverse(coset.a0);
  if (!a0_inv) throw ParameterError("a0 is not invertible");
  const auto& t = coset.tower;
  // membership once per batch; the per-j projection below is then exact
  for (const auto& x : samples) {
    if (!in_subring(mul(x.a, *a0_inv), t)) throw CosetMembershipError("build_subproblems: a is not in a0 S_q");
  }
  std::vector<SubProblem> out;
  for (std::size_t j = 0; j < t.stride(); ++j) {
    SubProblem p{j, t, {}, base_error};
    p.samples.reserve(samples.size());
    for (const auto& x : samples) {
      p.samples.push_back(SubSample{
          subring_extract(normalized_trace(x.a, t), t),
          subring_extract(normalized_trace(mul_zeta_pow(x.b, static_cast<std::int64_t>(j)), t), t), x.depth,
          x.terms});
    }
    out.push_back(std::move(p));
  }
  return out;
}

struct ReconstructionSystem {
  linalg::Matrix matrix;
  std::vector<std::int64_t> rhs;
};

// Rows j*B + t: coordinate t of T(a0 zeta^j s) = c_j T(a0), as a linear
// system in the n coefficients of s.
inline ReconstructionSystem reconstruction_system(const std::vector<std::vector<Coeff>>& solutions,
                                                  const CosetRestriction& coset) {
  const auto& t = coset.tower;
  const std::size_t n = t.n(), b = t.subring_dim(), stride = t.stride();
  const std::int64_t q = t.q();
  if (solutions.size() != stride) throw ParameterError("reconstruct_secret: expected one solution per rotation");
  ReconstructionSystem sys{linalg::Matrix(n, n), std::vector<std::int64_t>(n, 0)};
  for (std::size_t i = 0; i < n; ++i) {
    const RingElement col_base = mul_zeta_pow(coset.a0, static_cast<std::int64_t>(i));
    for (std::size_t j = 0; j < stride; ++j) {
      const RingElement v = mul_zeta_pow(col_base, static_cast<std::int64_t>(j));
      for (std::size_t u = 0; u < b; ++u) sys.matrix(j * b + u, i) = mod_positive(v[u * stride], q);
    }
  }
  const RingElement ta0 = normalized_trace(coset.a0, t);
  for (std::size_t j = 0; j < stride; ++j) {
    if (solutions[j].size() != b) throw ParameterError("reconstruct_secret: solution has wrong dimension");
    const RingElement rhs = mul(subring_embed(solutions[j], t), ta0);
    for (std::size_t u = 0; u < b; ++u) sys.rhs[j * b + u] = mod_positive(rhs[u * stride], q);
  }
  return sys;
}

inline RingElement reconstruct_secret_general(const std::vector<std::vector<Coeff>>& solutions,
                                              const CosetRestriction& coset) {
  auto sys = reconstruction_system(solutions, coset);
  auto x = linalg::solve(std::move(sys.matrix), std::move(sys.rhs), coset.tower.q());
  if (!x) throw SingularSystemError("reconstruct_secret: singular system (is a0 invertible?)");
  std::vector<Coeff> c(x->size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = center((*x)[i], coset.tower.q());
  return RingElement(coset.tower.ring(), std::move(c));
}

// With a0 = 1, c_j[t] is the coefficient of zeta^{t m/k} in zeta^j s, so s
// is a signed permutation of the concatenated c_j.
inline RingElement reconstruct_secret_unit(const std::vector<std::vector<Coeff>>& solutions, const TowerParams& t) {
  const std::size_t n = t.n(), stride = t.stride();
  if (solutions.size() != stride) throw ParameterError("reconstruct_secret: expected one solution per rotation");
  for (const auto& c : solutions) {
    if (c.size() != t.subring_dim()) throw ParameterError("reconstruct_secret: solution has wrong dimension");
  }
  std::vector<Coeff> s(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = (stride - i % stride) % stride;
    const std::size_t e = i + j;
    s[i] = e < n ? solutions[j][e / stride] : static_cast<Coeff>(-solutions[j][(e - n) / stride]);
  }
  return RingElement(t.ring(), std::move(s));
}

inline RingElement reconstruct_secret(const std::vector<std::vector<Coeff>>& solutions,
                                      const CosetRestriction& coset) {
  if (coset.a0 == RingElement::one(coset.tower.ring())) return reconstruct_secret_unit(solutions, coset.tower);
  return reconstruct_secret_general(solutions, coset);
}

// Line-oriented text form:
//   ringbkw-subproblem 1
//   n <n> q <q> B <B> j <j>
//   chi0 <spec>          (or "chi0 none")
//   samples <N>
//   <depth> <terms> a_0 .. a_{B-1} b_0 .. b_{B-1}     (N lines)
inline void write_subproblem(std::ostream& os, const SubProblem& p) {
  os << "ringbkw-subproblem 1\n";
  os << "n " << p.tower.n() << " q " << p.tower.q() << " B " << p.tower.subring_dim() << " j " << p.j << '\n';
  os << "chi0 " << (p.base_error ? p.base_error->describe() : std::string("none")) << '\n';
  os << "samples " << p.samples.size() << '\n';
  for (const auto& s : p.samples) {
    os << s.depth << ' ' << s.terms;
    for (Coeff c : s.a) os << ' ' << c;
    for (Coeff c : s.b) os << ' ' << c;
    os << '\n';
  }
}

inline SubProblem read_subproblem(std::istream& is) {
  auto fail = [](const std::string& what) { return std::runtime_error("subproblem file: " + what); };
  std::string word;
  int version = 0;
  if (!(is >> word >> version) || word != "ringbkw-subproblem" || version != 1) throw fail("bad header");
  std::size_t n = 0, b = 0, j = 0, count = 0;
  std::int64_t q = 0;
  std::string kn, kq, kb, kj, kc, spec, ks;
  if (!(is >> kn >> n >> kq >> q >> kb >> b >> kj >> j) || kn != "n" || kq != "q" || kb != "B" || kj != "j") {
    throw fail("bad parameter line");
  }
  if (!(is >> kc >> spec) || kc != "chi0") throw fail("bad chi0 line");
  if (!(is >> ks >> count) || ks != "samples") throw fail("bad samples line");
  SubProblem p{j, TowerParams::from_block_size(RingParams::make(n, q), b), {}, std::nullopt};
  if (j >= p.tower.stride()) throw fail("rotation index out of range");
  if (spec != "none") p.base_error = parse_distribution(spec, q);
  for (std::size_t i = 0; i < count; ++i) {
    SubSample s{std::vector<Coeff>(b), std::vector<Coeff>(b), 0, 1};
    if (!(is >> s.depth >> s.terms)) throw fail("truncated sample list");
    for (auto& c : s.a) {
      std::int64_t v;
      if (!(is >> v)) throw fail("truncated sample");
      c = center(v, q);
    }
    for (auto& c : s.b) {
      std::int64_t v;
      if (!(is >> v)) throw fail("truncated sample");
      c = center(v, q);
    }
    p.samples.push_back(std::move(s));
  }
  return p;
}

}  // namespace ringbkw
