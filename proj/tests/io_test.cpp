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
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "ringbkw/io.hpp"
#include "ringbkw/selftest.hpp"
#include "test_util.hpp"

namespace ringbkw::io {
namespace {

using testing::chi_square_accepts;

std::string stream_bytes(std::size_t n, std::int64_t q, std::uint64_t seed, std::size_t count) {
  const RingPtr ring = RingParams::make(n, q);
  LweOracle oracle = seeded_oracle(ring, parse_distribution("gaussian:1", q), seed);
  std::vector<Sample> samples;
  for (std::size_t i = 0; i < count; ++i) samples.push_back(oracle.draw());
  std::ostringstream os(std::ios::binary);
  write_stream(os, {static_cast<std::uint32_t>(n), static_cast<std::uint32_t>(q), seed, count}, samples);
  return os.str();
}

TEST(SampleStream, SameSeedGivesIdenticalBytes) {
  EXPECT_EQ(stream_bytes(16, 17, 5, 50), stream_bytes(16, 17, 5, 50));
  EXPECT_NE(stream_bytes(16, 17, 5, 50), stream_bytes(16, 17, 6, 50));
}

TEST(SampleStream, LayoutAndRoundTrip) {
  const std::string bytes = stream_bytes(8, 97, 0x1122334455667788ULL, 20);
  // 4 magic + 4 version + 4 n + 4 q + 8 seed + 8 count, then 2n words per sample
  ASSERT_EQ(bytes.size(), 32u + 20u * 2 * 8 * 4);
  EXPECT_EQ(bytes.substr(0, 4), "RBKW");
  EXPECT_EQ(static_cast<unsigned char>(bytes[8]), 8);
  EXPECT_EQ(static_cast<unsigned char>(bytes[12]), 97);
  EXPECT_EQ(static_cast<unsigned char>(bytes[16]), 0x88);
  EXPECT_EQ(static_cast<unsigned char>(bytes[23]), 0x11);

  std::istringstream is(bytes, std::ios::binary);
  SampleStreamReader reader(is);
  EXPECT_EQ(reader.header().n, 8u);
  EXPECT_EQ(reader.header().q, 97u);
  EXPECT_EQ(reader.header().seed, 0x1122334455667788ULL);
  EXPECT_EQ(reader.header().count, 20u);

  const RingPtr ring = RingParams::make(8, 97);
  LweOracle oracle = seeded_oracle(ring, parse_distribution("gaussian:1", 97), 0x1122334455667788ULL);
  std::size_t read = 0;
  while (auto s = reader.next()) {
    const Sample expect = oracle.draw();
    EXPECT_EQ(s->a, expect.a);
    EXPECT_EQ(s->b, expect.b);
    ++read;
  }
  EXPECT_EQ(read, 20u);
}

TEST(SampleStream, ResiduesOfAAreUniform) {
  const std::int64_t q = 17;
  const std::string bytes = stream_bytes(16, q, 9, 400);
  std::istringstream is(bytes, std::ios::binary);
  SampleStreamReader reader(is);
  std::vector<std::uint64_t> counts(q, 0);
  while (auto s = reader.next()) {
    for (auto r : testing::residues(s->a)) ++counts[r];
  }
  EXPECT_TRUE(chi_square_accepts(counts, std::vector<double>(q, 1.0 / q)));
}

TEST(SampleStream, RejectsMalformedInput) {
  std::string bytes = stream_bytes(8, 17, 1, 3);
  {
    std::string bad = bytes;
    bad[0] = 'X';
    std::istringstream is(bad);
    EXPECT_THROW(SampleStreamReader{is}, FormatError);
  }
  {
    std::istringstream is(bytes.substr(0, bytes.size() - 3));
    SampleStreamReader reader(is);
    EXPECT_TRUE(reader.next());
    EXPECT_TRUE(reader.next());
    EXPECT_THROW(reader.next(), FormatError);
  }
  {
    std::string bad = bytes;
    bad[32] = static_cast<char>(17);  // first residue equals q
    std::istringstream is(bad);
    SampleStreamReader reader(is);
    EXPECT_THROW(reader.next(), FormatError);
  }
}

TEST(Config, ParsesKeyValues) {
  std::istringstream is("# experiment\nn = 8\nblock-size=2\n\nvariant = traditional,advanced  # trailing\nseed=4\n");
  const auto kv = parse_key_values(is);
  EXPECT_EQ(kv.at("n"), "8");
  EXPECT_EQ(kv.at("block_size"), "2");
  EXPECT_EQ(kv.at("variant"), "traditional,advanced");
  const auto c = ExperimentConfig::from_map(kv);
  EXPECT_EQ(c.n, 8u);
  EXPECT_EQ(c.block_size, 2u);
  ASSERT_EQ(c.variants.size(), 2u);
  EXPECT_EQ(c.variants[0], bkw::Variant::traditional);
  EXPECT_EQ(*c.seed, 4u);
  EXPECT_EQ(c.q, 17);
  EXPECT_NO_THROW(c.validate());
}

TEST(Config, RejectsBadInput) {
  EXPECT_THROW(ExperimentConfig::from_map({{"colour", "red"}}), ParameterError);
  EXPECT_THROW(ExperimentConfig::from_map({{"n", "-8"}}), ParameterError);
  EXPECT_THROW(ExperimentConfig::from_map({{"n", "8x"}}), ParameterError);
  EXPECT_THROW(ExperimentConfig::from_map({{"mode", "sideways"}}), ParameterError);
  EXPECT_THROW(ExperimentConfig::from_map({}).validate(), ParameterError);  // no seed
  EXPECT_THROW(ExperimentConfig::from_map({{"seed", "1"}, {"q", "16"}}).validate(), ParameterError);
  EXPECT_THROW(ExperimentConfig::from_map({{"seed", "1"}, {"block_size", "16"}}).validate(), ParameterError);
  std::istringstream is("just a line\n");
  EXPECT_THROW(parse_key_values(is), FormatError);
}

TEST(Csv, QuotesFieldsWithSeparators) {
  EXPECT_EQ(csv_field("gaussian:1"), "gaussian:1");
  EXPECT_EQ(csv_field("uniform:-1,0,1"), "\"uniform:-1,0,1\"");
  EXPECT_EQ(csv_field("a\"b,"), "\"a\"\"b,\"");
}

std::string without_runtime(const std::vector<ExperimentRecord>& records) {
  std::ostringstream os;
  for (auto r : records) {
    r.stats.seconds = 0;
    write_csv_row(os, r);
  }
  return os.str();
}

TEST(Experiment, AdvancedTablesAreSmallerByBlockSize) {
  auto c = ExperimentConfig::from_map({{"n", "16"}, {"q", "17"}, {"block_size", "4"}, {"samples", "2000"}, {"seed", "3"}});
  const auto records = run_experiment(c);
  ASSERT_EQ(records.size(), 3u);
  const auto& trad = records[1].stats;
  const auto& adv = records[2].stats;
  EXPECT_EQ(records[0].initial_samples, 32000u);
  EXPECT_EQ(trad.fed, 32000u);
  EXPECT_EQ(adv.fed, 8000u);
  const double ratio = static_cast<double>(adv.total_rows) / static_cast<double>(trad.total_rows);
  EXPECT_GE(ratio, 0.95 / 4);
  EXPECT_LE(ratio, 1.05 / 4);
  EXPECT_EQ(without_runtime(records), without_runtime(run_experiment(c)));

  std::ostringstream row;
  write_csv_row(row, records[2]);
  const std::string line = row.str();
  EXPECT_EQ(std::count(line.begin(), line.end(), ','), std::count(kCsvHeader, kCsvHeader + std::strlen(kCsvHeader), ','));
}

TEST(Experiment, AllDifferencesKeepsReducedCountsEqual) {
  auto c = ExperimentConfig::from_map(
      {{"n", "16"}, {"q", "17"}, {"block_size", "4"}, {"samples", "600"}, {"seed", "2"},
       {"mode", "ad"}, {"variant", "traditional,advanced"}});
  const auto records = run_experiment(c);
  ASSERT_EQ(records.size(), 2u);
  EXPECT_EQ(records[0].stats.terminal, records[1].stats.terminal);
}

TEST(Experiment, ReadsStreamFile) {
  const auto path = std::filesystem::temp_directory_path() / "ringbkw_io_test.bin";
  {
    std::ofstream os(path, std::ios::binary);
    os << stream_bytes(16, 17, 7, 300);
  }
  auto c = ExperimentConfig::from_map({{"n", "16"}, {"q", "17"}, {"samples", "300"}, {"seed", "7"},
                                       {"variant", "advanced"}, {"input", path.string()}});
  const auto from_file = run_experiment(c);
  c.input.clear();
  const auto generated = run_experiment(c);
  EXPECT_EQ(without_runtime(from_file), without_runtime(generated));
  EXPECT_FALSE(from_file[0].exhausted);

  c = ExperimentConfig::from_map({{"n", "8"}, {"q", "17"}, {"seed", "7"}, {"input", path.string()}});
  EXPECT_THROW(run_experiment(c), ParameterError);
  std::filesystem::remove(path);
}

TEST(SelfTest, DefaultPassesAndBrokenTraceIsCaught) {
  selftest::Options opts;
  opts.trials = 50;
  for (const auto& r : selftest::run_all(opts)) EXPECT_TRUE(r.passed()) << r.name << ": " << r.first_failure;

  opts.trace = [](const RingElement& x, const TowerParams& t) { return neg(trace(x, t)); };
  const auto broken = selftest::trace_suite(opts);
  EXPECT_FALSE(broken.passed());
}

}  // namespace
}  // namespace ringbkw::io
