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
#include <cstring>
#include <fstream>
#include <iomanip>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ringbkw/bkw.hpp"
#include "ringbkw/ring.hpp"
#include "ringbkw/sampling.hpp"

// File formats and the experiment harness. Byte layouts are documented in
// docs/formats.md.
namespace ringbkw::io {

class FormatError : public std::runtime_error {
 public:
  explicit FormatError(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {

inline void put_u32(std::ostream& os, std::uint32_t v) {
  char b[4];
  for (int i = 0; i < 4; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xffU);
  os.write(b, 4);
}

inline void put_u64(std::ostream& os, std::uint64_t v) {
  char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xffU);
  os.write(b, 8);
}

inline std::uint32_t get_u32(std::istream& is) {
  unsigned char b[4];
  if (!is.read(reinterpret_cast<char*>(b), 4)) throw FormatError("sample stream: unexpected end of file");
  std::uint32_t v = 0;
  for (int i = 3; i >= 0; --i) v = (v << 8U) | b[i];
  return v;
}

inline std::uint64_t get_u64(std::istream& is) {
  const std::uint64_t lo = get_u32(is);
  const std::uint64_t hi = get_u32(is);
  return lo | (hi << 32U);
}

}  // namespace detail

inline constexpr char kStreamMagic[4] = {'R', 'B', 'K', 'W'};
inline constexpr std::uint32_t kStreamVersion = 1;

struct StreamHeader {
  std::uint32_t n = 0;
  std::uint32_t q = 0;
  std::uint64_t seed = 0;
  std::uint64_t count = 0;
};

inline void write_stream(std::ostream& os, const StreamHeader& h, const std::vector<Sample>& samples) {
  if (samples.size() != h.count) throw std::invalid_argument("write_stream: count does not match samples");
  os.write(kStreamMagic, 4);
  detail::put_u32(os, kStreamVersion);
  detail::put_u32(os, h.n);
  detail::put_u32(os, h.q);
  detail::put_u64(os, h.seed);
  detail::put_u64(os, h.count);
  for (const auto& s : samples) {
    for (Coeff c : s.a.coeffs()) detail::put_u32(os, static_cast<std::uint32_t>(mod_positive(c, h.q)));
    for (Coeff c : s.b.coeffs()) detail::put_u32(os, static_cast<std::uint32_t>(mod_positive(c, h.q)));
  }
  if (!os) throw FormatError("sample stream: write failed");
}

class SampleStreamReader {
 public:
  explicit SampleStreamReader(std::istream& is) : is_(is) {
    char magic[4];
    if (!is_.read(magic, 4) || std::memcmp(magic, kStreamMagic, 4) != 0) {
      throw FormatError("sample stream: bad magic");
    }
    const std::uint32_t version = detail::get_u32(is_);
    if (version != kStreamVersion) throw FormatError("sample stream: unsupported version " + std::to_string(version));
    header_.n = detail::get_u32(is_);
    header_.q = detail::get_u32(is_);
    header_.seed = detail::get_u64(is_);
    header_.count = detail::get_u64(is_);
    ring_ = RingParams::make(header_.n, header_.q);
  }

  const StreamHeader& header() const { return header_; }
  const RingPtr& ring() const { return ring_; }

  std::optional<Sample> next() {
    if (read_ == header_.count) return std::nullopt;
    std::vector<Coeff> a(header_.n), b(header_.n);
    for (auto* v : {&a, &b}) {
      for (auto& c : *v) {
        const std::uint32_t r = detail::get_u32(is_);
        if (r >= header_.q) throw FormatError("sample stream: residue out of range");
        c = static_cast<Coeff>(r);
      }
    }
    ++read_;
    return Sample{RingElement(ring_, std::move(a)), RingElement(ring_, std::move(b)), 0, 1};
  }

 private:
  std::istream& is_;
  StreamHeader header_;
  RingPtr ring_;
  std::uint64_t read_ = 0;
};

// Secret and error stream behind every seeded sample list: the secret is
// uniform from (seed, secret stream), samples come from LweOracle(seed).
inline constexpr std::uint64_t kSecretStream = 0x5ec2e7;

inline LweOracle seeded_oracle(const RingPtr& ring, const CoefficientDistribution& chi0, std::uint64_t seed) {
  Rng rng(seed, kSecretStream);
  RingElement s = uniform_element(ring, rng);
  return LweOracle(std::move(s), ErrorDistribution(chi0, ring), seed);
}

// ---------------------------------------------------------------------------
// key=value configuration

// One "key = value" per line; '#' starts a comment; keys may use '-' or '_'.
inline std::map<std::string, std::string> parse_key_values(std::istream& is) {
  std::map<std::string, std::string> out;
  std::string line;
  int lineno = 0;
  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return std::string();
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
  };
  while (std::getline(is, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw FormatError("config line " + std::to_string(lineno) + ": expected key=value");
    std::string key = trim(line.substr(0, eq));
    for (auto& ch : key) {
      if (ch == '-') ch = '_';
    }
    if (key.empty()) throw FormatError("config line " + std::to_string(lineno) + ": empty key");
    out[key] = trim(line.substr(eq + 1));
  }
  return out;
}

struct ExperimentConfig {
  std::size_t n = 16;
  std::int64_t q = 17;
  std::size_t block_size = 4;
  std::vector<bkw::Variant> variants{bkw::Variant::ring_blind, bkw::Variant::traditional, bkw::Variant::advanced};
  bkw::Mode mode = bkw::Mode::od;
  std::string chi0 = "gaussian:1";
  std::size_t samples = 2000;
  std::optional<std::uint64_t> seed;
  std::string out;    // CSV path; empty means stdout
  std::string input;  // optional sample stream file

  static std::uint64_t parse_unsigned(const std::string& key, const std::string& v) {
    std::size_t used = 0;
    unsigned long long x = 0;
    try {
      x = std::stoull(v, &used, 10);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != v.size() || v.empty() || v.front() == '-') {
      throw ParameterError("config: " + key + " expects a non-negative integer, got '" + v + "'");
    }
    return x;
  }

  static ExperimentConfig from_map(const std::map<std::string, std::string>& kv) {
    ExperimentConfig c;
    for (const auto& [key, v] : kv) {
      if (key == "n") {
        c.n = parse_unsigned(key, v);
      } else if (key == "q") {
        c.q = static_cast<std::int64_t>(parse_unsigned(key, v));
      } else if (key == "block_size") {
        c.block_size = parse_unsigned(key, v);
      } else if (key == "variant") {
        c.variants.clear();
        if (v == "all") {
          c.variants = {bkw::Variant::ring_blind, bkw::Variant::traditional, bkw::Variant::advanced};
        } else {
          std::stringstream ss(v);
          std::string item;
          while (std::getline(ss, item, ',')) c.variants.push_back(bkw::parse_variant(item));
        }
      } else if (key == "mode") {
        c.mode = bkw::parse_mode(v);
      } else if (key == "chi0") {
        c.chi0 = v;
      } else if (key == "samples") {
        c.samples = parse_unsigned(key, v);
      } else if (key == "seed") {
        c.seed = parse_unsigned(key, v);
      } else if (key == "out") {
        c.out = v;
      } else if (key == "input") {
        c.input = v;
      } else {
        throw ParameterError("config: unknown key '" + key + "'");
      }
    }
    return c;
  }

  // Fails before any work is done.
  void validate() const {
    if (!seed) throw ParameterError("config: seed is required for experiment runs");
    if (variants.empty()) throw ParameterError("config: no variant selected");
    if (samples == 0) throw ParameterError("config: samples must be positive");
    bkw::ReductionConfig::make(RingParams::make(n, q, false), block_size, bkw::Variant::advanced, mode);
    parse_distribution(chi0, q);
  }
};

struct ExperimentRecord {
  std::size_t n = 0;
  std::int64_t q = 0;
  std::size_t block_size = 0;
  bkw::Variant variant = bkw::Variant::advanced;
  bkw::Mode mode = bkw::Mode::od;
  std::string chi0;
  std::uint64_t seed = 0;
  std::size_t initial_samples = 0;
  bkw::TableStats stats;
  bool exhausted = false;
};

inline constexpr const char* kCsvHeader =
    "n,q,block_size,variant,mode,chi0,seed,initial_samples,samples_fed,table_size,table_entries,"
    "reduced_samples,runtime_s,rows_per_table";

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

inline void write_csv_row(std::ostream& os, const ExperimentRecord& r) {
  std::string rows;
  for (std::size_t i = 0; i < r.stats.rows.size(); ++i) rows += (i ? ";" : "") + std::to_string(r.stats.rows[i]);
  std::ostringstream runtime;
  runtime << std::fixed << std::setprecision(6) << r.stats.seconds;
  os << r.n << ',' << r.q << ',' << r.block_size << ',' << bkw::to_string(r.variant) << ','
     << bkw::to_string(r.mode) << ',' << csv_field(r.chi0) << ',' << r.seed << ',' << r.initial_samples << ','
     << r.stats.fed << ',' << r.stats.total_rows << ',' << r.stats.total_entries << ',' << r.stats.terminal << ','
     << runtime.str() << ',' << rows << '\n';
}

// Runs each configured variant on the same seeded sample list (or the given
// stream file). Ring-blind consumes n times as many initial samples.
inline std::vector<ExperimentRecord> run_experiment(const ExperimentConfig& config) {
  config.validate();
  const RingPtr ring = RingParams::make(config.n, config.q);
  const auto chi = parse_distribution(config.chi0, config.q);
  std::vector<Sample> loaded;
  if (!config.input.empty()) {
    std::ifstream in(config.input, std::ios::binary);
    if (!in) throw FormatError("cannot open sample stream '" + config.input + "'");
    SampleStreamReader reader(in);
    if (reader.header().n != config.n || static_cast<std::int64_t>(reader.header().q) != config.q) {
      throw ParameterError("sample stream parameters do not match the configuration");
    }
    while (auto s = reader.next()) loaded.push_back(std::move(*s));
  }
  std::vector<ExperimentRecord> out;
  for (auto variant : config.variants) {
    const auto rc = bkw::ReductionConfig::make(ring, config.block_size, variant, config.mode);
    const std::size_t inputs = variant == bkw::Variant::ring_blind ? config.samples * config.n : config.samples;
    bkw::ReductionResult res;
    if (config.input.empty()) {
      LweOracle oracle = seeded_oracle(ring, chi, *config.seed);
      res = bkw::run_reduction([&]() -> std::optional<Sample> { return oracle.draw(); }, inputs, rc);
    } else {
      std::size_t next = 0;
      res = bkw::run_reduction(
          [&]() -> std::optional<Sample> {
            if (next >= loaded.size()) return std::nullopt;
            return loaded[next++];
          },
          inputs, rc);
    }
    out.push_back(ExperimentRecord{config.n, config.q, config.block_size, variant, config.mode, config.chi0,
                                   *config.seed, inputs, res.stats, res.exhausted});
  }
  return out;
}

}  // namespace ringbkw::io
