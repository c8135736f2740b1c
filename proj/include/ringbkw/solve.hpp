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

#include <chrono>
#include <cmath>
#include <functional>
#include <future>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ringbkw/bkw.hpp"
#include "ringbkw/reduce.hpp"
#include "ringbkw/sampling.hpp"
#include "ringbkw/tower.hpp"

namespace ringbkw {

enum class Scoring { support, likelihood };

inline const char* to_string(Scoring s) { return s == Scoring::support ? "support" : "likelihood"; }

class NoSurvivorError : public std::runtime_error {
 public:
  explicit NoSurvivorError(const std::string& what) : std::runtime_error(what) {}
};

class ReductionStarved : public std::runtime_error {
 public:
  ReductionStarved(std::size_t have, std::size_t need)
      : std::runtime_error("reduction starved: " + std::to_string(have) + " reduced samples, need " +
                           std::to_string(need)),
        have(have), need(need) {}
  std::size_t have, need;
};

class NonUniqueHypothesis : public std::runtime_error {
 public:
  NonUniqueHypothesis(std::size_t j, std::uint64_t survivors)
      : std::runtime_error("subproblem " + std::to_string(j) + " has no unique best candidate" +
                           (survivors > 1 ? " (" + std::to_string(survivors) + " survivors)" : std::string())),
        j(j) {}
  std::size_t j;
};

class HoldoutFailure : public std::runtime_error {
 public:
  HoldoutFailure(RingElement candidate, std::size_t failed)
      : std::runtime_error("holdout verification failed on " + std::to_string(failed) + " samples"),
        candidate(std::move(candidate)) {}
  RingElement candidate;
};

class SearchTimeout : public std::runtime_error {
 public:
  explicit SearchTimeout(const std::string& what) : std::runtime_error(what) {}
};

struct HypothesisReport {
  std::vector<Coeff> best;
  // likelihood: sum of log pmf; support: number of survivors
  double score = 0.0;
  // likelihood: best minus second best; support: 1 when exactly one survives
  double margin = 0.0;
  bool unique = false;
  std::uint64_t tested = 0;
  std::uint64_t survivors = 0;  // support mode only
};

namespace detail {

// Multiplication by a in S_q = F_q[y]/(y^B + 1), y = zeta^{m/k}, as a B x B
// matrix with residues in [0, q).
inline std::vector<std::int64_t> subring_mul_matrix(const std::vector<Coeff>& a, std::int64_t q) {
  const std::size_t b = a.size();
  std::vector<std::int64_t> m(b * b);
  for (std::size_t r = 0; r < b; ++r) {
    for (std::size_t u = 0; u < b; ++u) {
      const std::int64_t v = r >= u ? a[r - u] : -std::int64_t{a[r + b - u]};
      m[r * b + u] = mod_positive(v, q);
    }
  }
  return m;
}

// Centered residues ordered 0, 1, -1, 2, -2, ...
inline std::vector<Coeff> odometer_digits(std::int64_t q) {
  std::vector<Coeff> d{0};
  for (Coeff v = 1; v <= (q - 1) / 2; ++v) {
    d.push_back(v);
    d.push_back(static_cast<Coeff>(-v));
  }
  return d;
}

inline std::uint64_t candidate_count(std::int64_t q, std::size_t b) {
  long double total = std::pow(static_cast<long double>(q), static_cast<long double>(b));
  if (total > 1.0e12L) throw ParameterError("hypothesis space q^B too large for exhaustive search");
  return static_cast<std::uint64_t>(std::llround(total));
}

}  // namespace detail

// Exhaustive search over all q^B subring secrets of `p`.
inline HypothesisReport hypothesis_test(const SubProblem& p, Scoring scoring) {
  if (p.samples.empty()) throw ParameterError("hypothesis_test: no samples");
  const std::int64_t q = p.tower.q();
  const std::size_t b = p.tower.subring_dim();
  const std::size_t count = p.samples.size();
  const std::uint64_t total = detail::candidate_count(q, b);
  const auto digits = detail::odometer_digits(q);

  // per-terms tables over residues [0, q)
  std::map<std::uint64_t, std::vector<double>> tables;
  for (const auto& s : p.samples) {
    if (tables.contains(s.terms)) continue;
    const auto dist = p.error_for(s.terms);
    std::vector<double> t(static_cast<std::size_t>(q));
    for (std::int64_t r = 0; r < q; ++r) {
      const double pr = dist.pmf()[static_cast<std::size_t>(r)];
      if (scoring == Scoring::support) {
        t[static_cast<std::size_t>(r)] = pr > 0.0 ? 1.0 : 0.0;
      } else {
        t[static_cast<std::size_t>(r)] = pr > 0.0 ? std::log(pr) : -std::numeric_limits<double>::infinity();
      }
    }
    tables.emplace(s.terms, std::move(t));
  }
  std::vector<const std::vector<double>*> table_of(count);
  std::vector<std::vector<std::int64_t>> mats(count);
  std::vector<std::vector<std::int64_t>> rhs(count);
  for (std::size_t i = 0; i < count; ++i) {
    table_of[i] = &tables.at(p.samples[i].terms);
    mats[i] = detail::subring_mul_matrix(p.samples[i].a, q);
    rhs[i].resize(b);
    for (std::size_t r = 0; r < b; ++r) rhs[i][r] = mod_positive(p.samples[i].b[r], q);
  }

  HypothesisReport report;
  report.tested = total;
  std::vector<std::size_t> odo(b, 0);
  std::vector<std::int64_t> cand(b, 0);

  if (scoring == Scoring::support) {
    std::vector<std::int64_t> resid(b);
    for (std::uint64_t idx = 0; idx < total; ++idx) {
      for (std::size_t u = 0; u < b; ++u) cand[u] = mod_positive(digits[odo[u]], q);
      bool ok = true;
      for (std::size_t i = 0; i < count && ok; ++i) {
        const auto& m = mats[i];
        const auto& t = *table_of[i];
        for (std::size_t r = 0; r < b && ok; ++r) {
          std::int64_t acc = rhs[i][r];
          for (std::size_t u = 0; u < b; ++u) acc -= m[r * b + u] * cand[u];
          ok = t[static_cast<std::size_t>(mod_positive(acc, q))] > 0.0;
        }
      }
      if (ok) {
        if (report.survivors == 0) {
          report.best.resize(b);
          for (std::size_t u = 0; u < b; ++u) report.best[u] = digits[odo[u]];
        }
        ++report.survivors;
      }
      for (std::size_t u = 0; u < b; ++u) {
        if (++odo[u] < digits.size()) break;
        odo[u] = 0;
      }
    }
    if (report.survivors == 0) throw NoSurvivorError("support scoring left no candidate for subproblem " + std::to_string(p.j));
    report.score = static_cast<double>(report.survivors);
    report.unique = report.survivors == 1;
    report.margin = report.unique ? 1.0 : 0.0;
    return report;
  }

  // likelihood: residuals b - a c kept incrementally as the odometer turns
  std::vector<std::vector<std::int64_t>> resid(rhs);
  double best = -std::numeric_limits<double>::infinity();
  double second = -std::numeric_limits<double>::infinity();
  bool have = false;
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    double score = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
      const auto& t = *table_of[i];
      for (std::size_t r = 0; r < b; ++r) score += t[static_cast<std::size_t>(resid[i][r])];
    }
    if (!have || score > best) {
      second = best;
      best = score;
      report.best.resize(b);
      for (std::size_t u = 0; u < b; ++u) report.best[u] = digits[odo[u]];
      have = true;
    } else if (score > second) {
      second = score;
    }
    // advance the odometer, patching residuals for every changed digit
    for (std::size_t u = 0; u < b; ++u) {
      const std::size_t next = odo[u] + 1 == digits.size() ? 0 : odo[u] + 1;
      const std::int64_t delta = mod_positive(std::int64_t{digits[next]} - digits[odo[u]], q);
      for (std::size_t i = 0; i < count; ++i) {
        for (std::size_t r = 0; r < b; ++r) resid[i][r] = mod_positive(resid[i][r] - mats[i][r * b + u] * delta, q);
      }
      odo[u] = next;
      if (next != 0) break;
    }
  }
  if (!std::isfinite(best)) throw NoSurvivorError("likelihood scoring found no possible candidate for subproblem " + std::to_string(p.j));
  report.score = best;
  report.margin = std::isfinite(second) ? best - second : std::numeric_limits<double>::infinity();
  report.unique = report.margin > 1e-9;
  return report;
}

// Number of samples after which a false candidate survives support scoring
// with probability at most 1% (union bound over q^B candidates); nullopt when
// the support covers all of F_q.
inline std::optional<std::size_t> support_sample_budget(std::int64_t q, std::size_t b, std::size_t support) {
  if (support >= static_cast<std::size_t>(q)) return std::nullopt;
  const double need = (static_cast<double>(b) * std::log(static_cast<double>(q)) + std::log(100.0)) /
                      std::log(static_cast<double>(q) / static_cast<double>(support));
  return static_cast<std::size_t>(std::ceil(need));
}

struct AttackConfig {
  std::size_t block_size = 2;
  bkw::Variant variant = bkw::Variant::advanced;
  bkw::Mode mode = bkw::Mode::od;
  CoefficientDistribution chi0 = CoefficientDistribution::point_mass(0, 3);
  std::optional<Scoring> scoring;            // default: support when possible
  std::optional<std::size_t> samples;        // reduced samples per subproblem
  std::size_t likelihood_samples = 200;      // default N in likelihood mode
  std::size_t max_inputs = 1000000;          // initial samples the reduction may consume
  std::size_t holdout = 32;
  bool parallel = true;
  std::function<void(const std::string&)> progress;
};

struct AttackTimings {
  double reduction = 0.0;
  double solve = 0.0;        // wall time of the whole hypothesis phase
  std::vector<double> per_subproblem;
  double reconstruction = 0.0;
  double total = 0.0;
};

struct AttackResult {
  RingElement secret;
  Scoring scoring = Scoring::support;
  std::size_t samples_per_subproblem = 0;
  std::vector<HypothesisReport> reports;
  bkw::TableStats stats;
  AttackTimings timings;
};

namespace detail {

inline double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Every residual coefficient of `count` fresh samples must lie in the support
// of chi0. Returns the number of failing samples.
inline std::size_t holdout_failures(const RingElement& s, const bkw::SampleSource& source, std::size_t count,
                                    const CoefficientDistribution& chi0) {
  std::size_t failed = 0;
  for (std::size_t i = 0; i < count; ++i) {
    auto x = source();
    if (!x) throw ReductionStarved(i, count);
    const RingElement e = sub(x->b, mul(x->a, s));
    for (Coeff c : e.coeffs()) {
      if (chi0.prob(c) == 0.0) {
        ++failed;
        break;
      }
    }
  }
  return failed;
}

inline std::vector<HypothesisReport> solve_all(const std::vector<SubProblem>& probs, Scoring scoring, bool parallel,
                                               std::vector<double>& times) {
  times.assign(probs.size(), 0.0);
  auto run = [&](std::size_t i) {
    const auto t0 = std::chrono::steady_clock::now();
    auto r = hypothesis_test(probs[i], scoring);
    times[i] = seconds_since(t0);
    return r;
  };
  std::vector<HypothesisReport> out;
  if (parallel && probs.size() > 1) {
    std::vector<std::future<HypothesisReport>> jobs;
    for (std::size_t i = 0; i < probs.size(); ++i) jobs.push_back(std::async(std::launch::async, run, i));
    for (auto& f : jobs) out.push_back(f.get());
  } else {
    for (std::size_t i = 0; i < probs.size(); ++i) out.push_back(run(i));
  }
  return out;
}

}  // namespace detail

// Reduction to the dimension-B subring, one subring search per rotation,
// then linear reconstruction and a holdout check on fresh samples.
inline AttackResult ring_bkw(const RingPtr& ring, const bkw::SampleSource& source, const AttackConfig& config) {
  const auto t_start = std::chrono::steady_clock::now();
  auto say = [&](const std::string& msg) {
    if (config.progress) config.progress(msg);
  };
  const auto reduction = bkw::ReductionConfig::make(ring, config.block_size, config.variant, config.mode);
  const auto& tower = reduction.tower;
  const std::int64_t q = ring->q();
  if (config.chi0.modulus() != q) throw ParameterError("chi0 modulus does not match the ring");

  // plan with the deepest error a terminal sample can carry
  const std::uint64_t max_terms = std::uint64_t{1} << reduction.active_tables();
  const auto deep = sum_distribution(config.chi0, max_terms);
  const auto budget = support_sample_budget(q, config.block_size, deep.support_size());
  AttackResult result{RingElement::zero(ring), Scoring::support, 0, {}, {}, {}};
  result.scoring = config.scoring.value_or(budget ? Scoring::support : Scoring::likelihood);
  std::size_t need = config.samples.value_or(0);
  if (need == 0) need = result.scoring == Scoring::support && budget ? *budget : config.likelihood_samples;
  result.samples_per_subproblem = need;
  say("reduction: " + std::string(bkw::to_string(config.variant)) + "/" + bkw::to_string(config.mode) +
      ", target " + std::to_string(need) + " reduced samples, scoring " + to_string(result.scoring));

  auto t0 = std::chrono::steady_clock::now();
  bkw::BkwReducer reducer(reduction);
  std::size_t inputs = 0;
  while (reducer.terminal_count() < need) {
    if (inputs >= config.max_inputs) throw ReductionStarved(reducer.terminal_count(), need);
    auto x = source();
    if (!x) throw ReductionStarved(reducer.terminal_count(), need);
    reducer.feed_input(*x);
    ++inputs;
  }
  result.stats = reducer.stats();
  result.timings.reduction = detail::seconds_since(t0);
  result.stats.seconds = result.timings.reduction;
  say("reduction: " + std::to_string(inputs) + " inputs, " + std::to_string(result.stats.total_rows) + " rows, " +
      std::to_string(reducer.terminal_count()) + " reduced samples");

  auto terminal = reducer.terminal_samples();
  terminal.erase(terminal.begin() + static_cast<std::ptrdiff_t>(need), terminal.end());
  const CosetRestriction unit{RingElement::one(ring), tower};

  t0 = std::chrono::steady_clock::now();
  const auto probs = build_subproblems(terminal, unit, config.chi0);
  result.reports = detail::solve_all(probs, result.scoring, config.parallel, result.timings.per_subproblem);
  result.timings.solve = detail::seconds_since(t0);
  for (std::size_t j = 0; j < result.reports.size(); ++j) {
    if (!result.reports[j].unique) throw NonUniqueHypothesis(j, result.reports[j].survivors);
  }
  say("hypothesis testing: " + std::to_string(probs.size()) + " subproblems solved");

  t0 = std::chrono::steady_clock::now();
  std::vector<std::vector<Coeff>> solutions;
  for (const auto& r : result.reports) solutions.push_back(r.best);
  result.secret = reconstruct_secret(solutions, unit);
  result.timings.reconstruction = detail::seconds_since(t0);

  const std::size_t failed = detail::holdout_failures(result.secret, source, config.holdout, config.chi0);
  if (failed > 0) throw HoldoutFailure(result.secret, failed);
  say("holdout: " + std::to_string(config.holdout) + " fresh samples consistent");
  result.timings.total = detail::seconds_since(t_start);
  return result;
}

struct SqrtConfig {
  CoefficientDistribution chi0 = CoefficientDistribution::point_mass(0, 3);
  std::optional<std::size_t> samples;  // accepted samples; default from the support budget
  std::uint64_t max_draws = 50'000'000;
  double timeout_seconds = 60.0;
  std::size_t holdout = 32;
};

struct SqrtResult {
  RingElement secret;
  std::uint64_t draws = 0;
  std::size_t accepted = 0;
  std::vector<HypothesisReport> reports;
};

// Keeps only samples with a in the index-2 subring (dimension n/2), splits
// them into the two subproblems for zeta^0 and zeta^1, and searches both.
inline SqrtResult sqrt_search(const RingPtr& ring, const bkw::SampleSource& source, const SqrtConfig& config) {
  const std::int64_t q = ring->q();
  if (config.chi0.support_size() >= static_cast<std::size_t>(q)) {
    throw ParameterError("sqrt_search needs an error support strictly smaller than F_q");
  }
  const TowerParams tower(ring, ring->n());
  const std::size_t need =
      config.samples.value_or(*support_sample_budget(q, tower.subring_dim(), config.chi0.support_size()));
  const auto t0 = std::chrono::steady_clock::now();
  SqrtResult result{RingElement::zero(ring), 0, 0, {}};
  std::vector<Sample> kept;
  while (kept.size() < need) {
    if (result.draws >= config.max_draws) throw SearchTimeout("sqrt_search: draw budget exhausted");
    if ((result.draws & 0xfffU) == 0 && detail::seconds_since(t0) > config.timeout_seconds) {
      throw SearchTimeout("sqrt_search: time budget exceeded");
    }
    auto x = source();
    if (!x) throw ReductionStarved(kept.size(), need);
    ++result.draws;
    if (in_subring(x->a, tower)) kept.push_back(std::move(*x));
  }
  result.accepted = kept.size();
  const CosetRestriction unit{RingElement::one(ring), tower};
  const auto probs = build_subproblems(kept, unit, config.chi0);
  std::vector<double> times;
  result.reports = detail::solve_all(probs, Scoring::support, false, times);
  std::vector<std::vector<Coeff>> solutions;
  for (std::size_t j = 0; j < result.reports.size(); ++j) {
    if (!result.reports[j].unique) throw NonUniqueHypothesis(j, result.reports[j].survivors);
    solutions.push_back(result.reports[j].best);
  }
  result.secret = reconstruct_secret(solutions, unit);
  const std::size_t failed = detail::holdout_failures(result.secret, source, config.holdout, config.chi0);
  if (failed > 0) throw HoldoutFailure(result.secret, failed);
  return result;
}

struct CostReport {
  double reduction = 0.0;    // t_B
  double hypothesis = 0.0;   // (n/B) t_R
  double overhead = 0.0;     // N * unit * (n log2 q)^2
  double total = 0.0;
};

// Cost composition: t_B + (n/B) t_R + N * poly(n log q), with the polynomial
// taken as unit_seconds * (n log2 q)^2.
inline CostReport composition_estimate(double t_b, double t_r, std::size_t n, std::size_t b, std::size_t samples,
                                       std::int64_t q, double unit_seconds = 1e-9) {
  CostReport r;
  r.reduction = t_b;
  r.hypothesis = static_cast<double>(n / b) * t_r;
  const double size = static_cast<double>(n) * std::log2(static_cast<double>(q));
  r.overhead = static_cast<double>(samples) * unit_seconds * size * size;
  r.total = r.reduction + r.hypothesis + r.overhead;
  return r;
}

}  // namespace ringbkw
