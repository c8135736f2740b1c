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
#include <cstdint>
#include <cstring>
#include <functional>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ringbkw/ring.hpp"
#include "ringbkw/sampling.hpp"
#include "ringbkw/tower.hpp"

// BKW reduction on the prioritized basis. Table i (1-based) eliminates the
// i-th block of B prioritized coefficients; a sample leaving table n/B - 1
// has a in the dimension-B subring S_q and lands in the terminal table.
namespace ringbkw::bkw {

enum class Variant { ring_blind, traditional, advanced };
enum class Mode { od, ad };

inline const char* to_string(Variant v) {
  switch (v) {
    case Variant::ring_blind:
      return "ring_blind";
    case Variant::traditional:
      return "traditional";
    case Variant::advanced:
      return "advanced";
  }
  return "?";
}

inline const char* to_string(Mode m) { return m == Mode::od ? "od" : "ad"; }

inline Variant parse_variant(const std::string& s) {
  if (s == "ring_blind" || s == "ring-blind" || s == "blind") return Variant::ring_blind;
  if (s == "traditional") return Variant::traditional;
  if (s == "advanced") return Variant::advanced;
  throw ParameterError("unknown BKW variant '" + s + "'");
}

inline Mode parse_mode(const std::string& s) {
  if (s == "od") return Mode::od;
  if (s == "ad") return Mode::ad;
  throw ParameterError("unknown BKW mode '" + s + "'");
}

struct ReductionConfig {
  TowerParams tower;  // target subring; its dimension is the block size B
  Variant variant = Variant::advanced;
  Mode mode = Mode::od;

  static ReductionConfig make(RingPtr ring, std::size_t block_size, Variant variant, Mode mode) {
    if (block_size >= ring->n()) {
      throw ParameterError("block size must be smaller than n");
    }
    return {TowerParams::from_block_size(std::move(ring), block_size), variant, mode};
  }

  std::size_t block_size() const { return tower.subring_dim(); }
  std::size_t blocks() const { return tower.n() / block_size(); }
  std::size_t active_tables() const { return blocks() - 1; }

  // Number of rotations zeta^j a of each input sample sent to table 1.
  std::size_t rotations_per_input() const {
    switch (variant) {
      case Variant::ring_blind:
        return 1;
      case Variant::traditional:
        return tower.n();
      case Variant::advanced:
        return blocks();
    }
    return 1;
  }

  // Upper bound on the rows of any active table: (q^B - 1)/(2B) for advanced
  // keying, (q^B - 1)/2 otherwise. nullopt when q^B overflows 64 bits.
  std::optional<std::uint64_t> row_bound() const {
    const long double qb = std::pow(static_cast<long double>(tower.q()), static_cast<long double>(block_size()));
    if (qb > 9.0e18L) return std::nullopt;
    std::uint64_t pow = 1;
    for (std::size_t i = 0; i < block_size(); ++i) pow *= static_cast<std::uint64_t>(tower.q());
    const std::uint64_t orbit = variant == Variant::advanced ? 2 * block_size() : 2;
    return (pow - 1) / orbit;
  }
};

// Signed permutations of one block induced by zeta^{t * n/B}, t in [0, B).
// Every block carries the same pattern: block i holds the exponents
// r_i + (n/B) * t_u for a common ordering t_u.
struct BlockSymmetry {
  std::size_t block_size = 0;
  std::vector<std::vector<std::size_t>> source;
  std::vector<std::vector<Coeff>> sign;

  static BlockSymmetry make(const TowerParams& tower) {
    const std::size_t b = tower.subring_dim();
    BlockSymmetry sym{b, {}, {}};
    for (std::size_t t = 0; t < b; ++t) {
      const auto perm = prioritized_rotation(*tower.ring(), static_cast<std::int64_t>(t * tower.stride()));
      sym.source.emplace_back(perm.source.begin(), perm.source.begin() + static_cast<std::ptrdiff_t>(b));
      sym.sign.emplace_back(perm.sign.begin(), perm.sign.begin() + static_cast<std::ptrdiff_t>(b));
    }
    return sym;
  }

  std::vector<Coeff> rotate(std::span<const Coeff> block, std::size_t t) const {
    std::vector<Coeff> out(block_size);
    for (std::size_t u = 0; u < block_size; ++u) {
      out[u] = static_cast<Coeff>(sign[t][u] * block[source[t][u]]);
    }
    return out;
  }
};

struct CanonicalKey {
  std::vector<Coeff> key;
  // The key is applied_sign * zeta^{applied_rotation} acting on the block;
  // applied_rotation is a multiple of n/B.
  std::size_t applied_rotation = 0;
  Coeff applied_sign = 1;
  bool self_match = false;
  // When self_match holds for a nonzero block, a second signed rotation
  // giving the same key.
  std::size_t twin_rotation = 0;
  Coeff twin_sign = 1;
};

namespace detail {

inline Coeff leading_sign(std::span<const Coeff> v) {
  for (Coeff c : v) {
    if (c != 0) return c > 0 ? 1 : -1;
  }
  return 1;
}

// Order on blocks: absolute values lexicographically, then signed values.
inline bool key_less(std::span<const Coeff> x, std::span<const Coeff> y) {
  for (std::size_t i = 0; i < x.size(); ++i) {
    const Coeff ax = static_cast<Coeff>(std::abs(x[i])), ay = static_cast<Coeff>(std::abs(y[i]));
    if (ax != ay) return ax < ay;
  }
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] != y[i]) return x[i] < y[i];
  }
  return false;
}

inline bool all_zero(std::span<const Coeff> v) {
  for (Coeff c : v) {
    if (c != 0) return false;
  }
  return true;
}

}  // namespace detail

// Canonical representative of a block up to overall sign (first nonzero
// entry in 1..(q-1)/2) and, for advanced keying, up to the B rotations by
// zeta^{t n/B}.
inline CanonicalKey canonicalize(std::span<const Coeff> block, Variant variant,
                                 const BlockSymmetry& sym) {
  CanonicalKey best;
  if (detail::all_zero(block)) {
    best.key.assign(block.begin(), block.end());
    best.self_match = true;
    return best;
  }
  const std::size_t stride_count = variant == Variant::advanced ? sym.block_size : 1;
  bool have = false;
  for (std::size_t t = 0; t < stride_count; ++t) {
    std::vector<Coeff> v = t == 0 ? std::vector<Coeff>(block.begin(), block.end()) : sym.rotate(block, t);
    const Coeff s = detail::leading_sign(v);
    if (s < 0) {
      for (auto& c : v) c = static_cast<Coeff>(-c);
    }
    if (!have || detail::key_less(v, best.key)) {
      best.key = std::move(v);
      best.applied_rotation = t;
      best.applied_sign = s;
      best.self_match = false;
      have = true;
    } else if (v == best.key) {
      best.self_match = true;
      best.twin_rotation = t;
      best.twin_sign = s;
    }
  }
  return best;
}

struct TableStats {
  std::vector<std::size_t> rows;     // distinct keys per active table
  std::vector<std::size_t> entries;  // stored samples per active table
  std::vector<std::size_t> hits;     // incoming samples that matched a row
  std::size_t total_rows = 0;        // excluding the terminal table
  std::size_t total_entries = 0;
  std::size_t terminal = 0;          // reduced samples, deduplicated
  std::size_t terminal_arrivals = 0;
  std::size_t zero_discarded = 0;    // arrivals with a = 0
  std::size_t inputs = 0;            // initial samples consumed
  std::size_t fed = 0;               // samples sent to table 1 (after rotations)
  double seconds = 0.0;
};

class RowBoundViolation : public std::logic_error {
 public:
  explicit RowBoundViolation(const std::string& what) : std::logic_error(what) {}
};

class BkwReducer {
 public:
  explicit BkwReducer(ReductionConfig config)
      : config_(std::move(config)), sym_(BlockSymmetry::make(config_.tower)),
        tables_(config_.active_tables()), bound_(config_.row_bound()) {
    const auto& ring = *config_.tower.ring();
    const std::size_t b = config_.block_size();
    packed_ = static_cast<double>(b) * std::log2(static_cast<double>(ring.q())) < 63.0;
    for (std::size_t t = 0; t < 2 * b; ++t) {
      rotations_.push_back(prioritized_rotation(ring, static_cast<std::int64_t>(t * config_.tower.stride())));
    }
  }

  const ReductionConfig& config() const { return config_; }

  // Sends one sample (no rotations) into table 1 and returns the samples it
  // added to the terminal table.
  std::vector<Sample> feed(const Sample& sample) {
    if (!sample.a.params().same_as(*config_.tower.ring())) throw ParameterError("feed: ring mismatch");
    ++fed_;
    const std::size_t before = terminal_.size();
    std::vector<std::pair<Work, std::size_t>> pending;
    pending.emplace_back(to_work(sample), 0);
    while (!pending.empty()) {
      auto [w, table] = std::move(pending.back());
      pending.pop_back();
      process(std::move(w), table, pending);
    }
    check_bounds();
    std::vector<Sample> added;
    for (std::size_t i = before; i < terminal_.size(); ++i) added.push_back(to_sample(terminal_[i]));
    return added;
  }

  // Feeds the variant's rotations of one initial sample: j = 0 only
  // (ring-blind), 0..n-1 (traditional) or 0..n/B-1 (advanced).
  std::vector<Sample> feed_input(const Sample& sample) {
    ++inputs_;
    std::vector<Sample> added;
    for (std::size_t j = 0; j < config_.rotations_per_input(); ++j) {
      auto part = feed(j == 0 ? sample : rotate_sample(sample, static_cast<std::int64_t>(j)));
      added.insert(added.end(), part.begin(), part.end());
    }
    return added;
  }

  std::size_t terminal_count() const { return terminal_.size(); }

  std::vector<Sample> terminal_samples() const {
    std::vector<Sample> out;
    out.reserve(terminal_.size());
    for (const auto& w : terminal_) out.push_back(to_sample(w));
    return out;
  }

  // Stored samples of active table `index` (1-based), row by row.
  std::vector<std::vector<Sample>> table_rows(std::size_t index) const {
    std::vector<std::vector<Sample>> out;
    for (const auto& row : tables_.at(index - 1).rows) {
      std::vector<Sample> r;
      for (const auto& w : row) r.push_back(to_sample(w));
      out.push_back(std::move(r));
    }
    return out;
  }

  TableStats stats() const {
    TableStats s;
    for (const auto& t : tables_) {
      s.rows.push_back(t.rows.size());
      s.entries.push_back(t.entries);
      s.hits.push_back(t.hits);
      s.total_rows += t.rows.size();
      s.total_entries += t.entries;
    }
    s.terminal = terminal_.size();
    s.terminal_arrivals = terminal_arrivals_;
    s.zero_discarded = zero_discarded_;
    s.inputs = inputs_;
    s.fed = fed_;
    return s;
  }

  // Binary checkpoint; format documented in docs/formats.md.
  void save(std::ostream& os) const {
    const auto& ring = *config_.tower.ring();
    os.write(kMagic, 8);
    put_u32(os, kVersion);
    put_u32(os, static_cast<std::uint32_t>(ring.n()));
    put_u32(os, static_cast<std::uint32_t>(ring.q()));
    put_u32(os, static_cast<std::uint32_t>(config_.block_size()));
    put_u32(os, static_cast<std::uint32_t>(config_.variant));
    put_u32(os, static_cast<std::uint32_t>(config_.mode));
    put_u64(os, inputs_);
    put_u64(os, fed_);
    put_u64(os, terminal_arrivals_);
    put_u64(os, zero_discarded_);
    for (const auto& t : tables_) {
      put_u64(os, t.hits);
      put_u64(os, t.rows.size());
      for (const auto& row : t.rows) {
        put_u32(os, static_cast<std::uint32_t>(row.size()));
        for (const auto& w : row) put_work(os, w);
      }
    }
    put_u64(os, terminal_.size());
    for (const auto& w : terminal_) put_work(os, w);
    if (!os) throw std::runtime_error("BKW checkpoint: write failed");
  }

  static BkwReducer load(std::istream& is) {
    char magic[8];
    is.read(magic, 8);
    if (!is || std::memcmp(magic, kMagic, 8) != 0) throw std::runtime_error("BKW checkpoint: bad magic");
    if (get_u32(is) != kVersion) throw std::runtime_error("BKW checkpoint: unsupported version");
    const std::size_t n = get_u32(is);
    const std::int64_t q = get_u32(is);
    const std::size_t b = get_u32(is);
    const auto variant = static_cast<Variant>(get_u32(is));
    const auto mode = static_cast<Mode>(get_u32(is));
    BkwReducer r(ReductionConfig::make(RingParams::make(n, q), b, variant, mode));
    r.inputs_ = get_u64(is);
    r.fed_ = get_u64(is);
    r.terminal_arrivals_ = get_u64(is);
    r.zero_discarded_ = get_u64(is);
    for (std::size_t i = 0; i < r.tables_.size(); ++i) {
      auto& t = r.tables_[i];
      t.hits = get_u64(is);
      const std::uint64_t rows = get_u64(is);
      for (std::uint64_t k = 0; k < rows; ++k) {
        const std::uint32_t count = get_u32(is);
        std::vector<Work> row;
        for (std::uint32_t e = 0; e < count; ++e) row.push_back(r.get_work(is));
        if (row.empty()) throw std::runtime_error("BKW checkpoint: empty row");
        const auto block = r.block_of(row.front(), i);
        const auto key = canonicalize(block, variant, r.sym_);
        const std::size_t idx = t.rows.size();
        r.insert_key(t, key.key, idx);
        t.entries += row.size();
        t.rows.push_back(std::move(row));
      }
    }
    const std::uint64_t term = get_u64(is);
    for (std::uint64_t k = 0; k < term; ++k) {
      Work w = r.get_work(is);
      r.terminal_index_.emplace(r.orbit_key(w), r.terminal_.size());
      r.terminal_.push_back(std::move(w));
    }
    if (!is) throw std::runtime_error("BKW checkpoint: truncated");
    return r;
  }

 private:
  static constexpr char kMagic[8] = {'R', 'B', 'K', 'W', 'T', 'A', 'B', '1'};
  static constexpr std::uint32_t kVersion = 1;

  // a on prioritized coordinates, b on the standard zeta-basis.
  struct Work {
    std::vector<Coeff> a;
    std::vector<Coeff> b;
    int depth = 0;
    std::uint64_t terms = 1;
  };

  struct Table {
    std::vector<std::vector<Work>> rows;
    std::unordered_map<std::uint64_t, std::size_t> packed_index;
    std::unordered_map<std::string, std::size_t> wide_index;
    std::size_t entries = 0;
    std::size_t hits = 0;
  };

  Work to_work(const Sample& s) const { return {to_prioritized(s.a), {s.b.coeffs().begin(), s.b.coeffs().end()}, s.depth, s.terms}; }

  Sample to_sample(const Work& w) const {
    const auto& ring = config_.tower.ring();
    return Sample{from_prioritized(ring, w.a), RingElement(ring, w.b), w.depth, w.terms};
  }

  std::span<const Coeff> block_of(const Work& w, std::size_t table) const {
    const std::size_t b = config_.block_size();
    return std::span<const Coeff>(w.a).subspan(table * b, b);
  }

  // sign * zeta^{t n/B} applied to the whole sample.
  Work rotated(const Work& w, std::size_t t, Coeff sign) const {
    const std::size_t n = w.a.size();
    Work out{rotations_[t].apply(w.a), std::vector<Coeff>(n), w.depth, w.terms};
    const std::size_t shift = t * config_.tower.stride();
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t k = (i + shift) % (2 * n);
      Coeff s = sign;
      if (k >= n) {
        k -= n;
        s = static_cast<Coeff>(-s);
      }
      out.b[k] = static_cast<Coeff>(s * w.b[i]);
    }
    if (sign < 0) {
      for (auto& c : out.a) c = static_cast<Coeff>(-c);
    }
    return out;
  }

  Work difference(const Work& stored, const Work& incoming) const {
    const std::int64_t q = config_.tower.q();
    const std::size_t n = stored.a.size();
    Work d{std::vector<Coeff>(n), std::vector<Coeff>(n), std::max(stored.depth, incoming.depth) + 1,
           stored.terms + incoming.terms};
    for (std::size_t i = 0; i < n; ++i) {
      d.a[i] = center(std::int64_t{stored.a[i]} - incoming.a[i], q);
      d.b[i] = center(std::int64_t{stored.b[i]} - incoming.b[i], q);
    }
    return d;
  }

  std::optional<std::uint64_t> pack(std::span<const Coeff> key) const {
    if (!packed_) return std::nullopt;
    const auto q = static_cast<std::uint64_t>(config_.tower.q());
    const std::int64_t half = (config_.tower.q() - 1) / 2;
    std::uint64_t v = 0;
    for (Coeff c : key) v = v * q + static_cast<std::uint64_t>(c + half);
    return v;
  }

  static std::string bytes_of(std::span<const Coeff> v) {
    std::string s(v.size() * sizeof(Coeff), '\0');
    std::memcpy(s.data(), v.data(), s.size());
    return s;
  }

  std::optional<std::size_t> find_key(const Table& t, std::span<const Coeff> key) const {
    if (auto p = pack(key)) {
      auto it = t.packed_index.find(*p);
      if (it != t.packed_index.end()) return it->second;
      return std::nullopt;
    }
    auto it = t.wide_index.find(bytes_of(key));
    if (it != t.wide_index.end()) return it->second;
    return std::nullopt;
  }

  void insert_key(Table& t, std::span<const Coeff> key, std::size_t row) const {
    if (auto p = pack(key)) {
      t.packed_index.emplace(*p, row);
    } else {
      t.wide_index.emplace(bytes_of(key), row);
    }
  }

  // Canonical form of the whole sample under +-zeta^{t n/B}; the terminal
  // table keeps one sample per such orbit.
  std::string orbit_key(const Work& w) const {
    std::vector<Coeff> best;
    for (std::size_t t = 0; t < 2 * config_.block_size(); ++t) {
      const Work r = rotated(w, t, 1);
      std::vector<Coeff> flat(r.a);
      flat.insert(flat.end(), r.b.begin(), r.b.end());
      if (best.empty() || flat < best) best = std::move(flat);
    }
    return bytes_of(best);
  }

  void to_terminal(Work w) {
    ++terminal_arrivals_;
    if (detail::all_zero(w.a)) {
      ++zero_discarded_;
      return;
    }
    auto key = orbit_key(w);
    if (terminal_index_.contains(key)) return;
    terminal_index_.emplace(std::move(key), terminal_.size());
    terminal_.push_back(std::move(w));
  }

  void process(Work w, std::size_t table, std::vector<std::pair<Work, std::size_t>>& pending) {
    while (table < tables_.size()) {
      const auto block = block_of(w, table);
      if (detail::all_zero(block)) {
        ++table;
        continue;
      }
      const CanonicalKey key = canonicalize(block, config_.variant, sym_);
      Work x = (key.applied_rotation == 0 && key.applied_sign == 1)
                   ? std::move(w)
                   : rotated(w, key.applied_rotation, key.applied_sign);
      if (key.self_match) {
        // two signed rotations agree on this block, so their difference
        // already clears it
        pending.emplace_back(difference(x, rotated_twin(x, key)), table + 1);
      }
      Table& t = tables_[table];
      const auto row = find_key(t, key.key);
      if (!row) {
        insert_key(t, key.key, t.rows.size());
        t.rows.push_back({std::move(x)});
        ++t.entries;
        return;
      }
      ++t.hits;
      auto& stored = t.rows[*row];
      if (config_.mode == Mode::od) {
        w = difference(stored.front(), x);
        ++table;
        continue;
      }
      for (const auto& y : stored) pending.emplace_back(difference(y, x), table + 1);
      stored.push_back(std::move(x));
      ++t.entries;
      return;
    }
    to_terminal(std::move(w));
  }

  // x is already canonical; the twin is the other signed rotation with the
  // same key, expressed relative to x.
  Work rotated_twin(const Work& x, const CanonicalKey& key) const {
    const std::size_t b = config_.block_size();
    // x = s1 * z^{t1} w and twin = s2 * z^{t2} w, so twin = (s2/s1) z^{t2 - t1} x
    const std::size_t rel = (key.twin_rotation + 2 * b - key.applied_rotation) % (2 * b);
    return rotated(x, rel, static_cast<Coeff>(key.twin_sign * key.applied_sign));
  }

  void check_bounds() const {
    if (!bound_) return;
    for (std::size_t i = 0; i < tables_.size(); ++i) {
      if (tables_[i].rows.size() > *bound_) {
        throw RowBoundViolation("table " + std::to_string(i + 1) + " has " +
                                std::to_string(tables_[i].rows.size()) + " rows, bound " +
                                std::to_string(*bound_));
      }
    }
  }

  static void put_u32(std::ostream& os, std::uint32_t v) {
    unsigned char b[4];
    for (int i = 0; i < 4; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
    os.write(reinterpret_cast<const char*>(b), 4);
  }
  static void put_u64(std::ostream& os, std::uint64_t v) {
    unsigned char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
    os.write(reinterpret_cast<const char*>(b), 8);
  }
  static std::uint32_t get_u32(std::istream& is) {
    unsigned char b[4] = {};
    is.read(reinterpret_cast<char*>(b), 4);
    std::uint32_t v = 0;
    for (int i = 3; i >= 0; --i) v = (v << 8U) | b[i];
    return v;
  }
  static std::uint64_t get_u64(std::istream& is) {
    unsigned char b[8] = {};
    is.read(reinterpret_cast<char*>(b), 8);
    std::uint64_t v = 0;
    for (int i = 7; i >= 0; --i) v = (v << 8U) | b[i];
    return v;
  }
  static void put_work(std::ostream& os, const Work& w) {
    put_u32(os, static_cast<std::uint32_t>(w.depth));
    put_u64(os, w.terms);
    for (Coeff c : w.a) put_u32(os, static_cast<std::uint32_t>(c));
    for (Coeff c : w.b) put_u32(os, static_cast<std::uint32_t>(c));
  }
  Work get_work(std::istream& is) const {
    const std::size_t n = config_.tower.n();
    Work w{std::vector<Coeff>(n), std::vector<Coeff>(n), 0, 1};
    w.depth = static_cast<int>(get_u32(is));
    w.terms = get_u64(is);
    for (auto& c : w.a) c = static_cast<Coeff>(get_u32(is));
    for (auto& c : w.b) c = static_cast<Coeff>(get_u32(is));
    return w;
  }

  ReductionConfig config_;
  BlockSymmetry sym_;
  std::vector<SignedPermutation> rotations_;  // index t: zeta^{t n/B}, t < 2B
  std::vector<Table> tables_;
  std::optional<std::uint64_t> bound_;
  bool packed_ = true;
  std::vector<Work> terminal_;
  std::unordered_map<std::string, std::size_t> terminal_index_;
  std::size_t terminal_arrivals_ = 0;
  std::size_t zero_discarded_ = 0;
  std::size_t inputs_ = 0;
  std::size_t fed_ = 0;
};

inline TableStats table_stats(const BkwReducer& reducer) { return reducer.stats(); }

using SampleSource = std::function<std::optional<Sample>()>;

struct ReductionResult {
  std::vector<Sample> terminal;
  TableStats stats;
  bool exhausted = false;  // the source ran dry before `count` inputs
};

// Feeds up to `count` initial samples (with the variant's rotations) into
// `reducer`. Wall time covers only this call.
inline ReductionResult run_reduction(const SampleSource& source, std::size_t count, BkwReducer& reducer) {
  ReductionResult result;
  const auto start = std::chrono::steady_clock::now();
  for (std::size_t i = 0; i < count; ++i) {
    auto s = source();
    if (!s) {
      result.exhausted = true;
      break;
    }
    reducer.feed_input(*s);
  }
  const auto stop = std::chrono::steady_clock::now();
  result.terminal = reducer.terminal_samples();
  result.stats = reducer.stats();
  result.stats.seconds = std::chrono::duration<double>(stop - start).count();
  return result;
}

inline ReductionResult run_reduction(const SampleSource& source, std::size_t count,
                                     const ReductionConfig& config) {
  BkwReducer reducer(config);
  return run_reduction(source, count, reducer);
}

}  // namespace ringbkw::bkw
