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

// ringbkw command-line harness.
//
//   ringbkw gen         write a seeded Ring-LWE sample stream
//   ringbkw experiment  run BKW reductions and emit CSV records
//   ringbkw attack      recover a planted secret end to end
//   ringbkw verify      run the invariant self-test suites
//
// Exit codes: 0 success, 1 attack or verification failure, 2 usage error.

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "ringbkw/io.hpp"
#include "ringbkw/selftest.hpp"
#include "ringbkw/solve.hpp"

namespace {

using namespace ringbkw;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

// String-valued flags that override keys of an optional --config file.
class FlagSet {
 public:
  void add(CLI::App* app, const std::string& key, const std::string& help) {
    std::string flag = key;
    for (auto& ch : flag) {
      if (ch == '_') ch = '-';
    }
    options_[key] = app->add_option("--" + flag, values_[key], help);
  }

  std::map<std::string, std::string> merged(const std::string& config_path) const {
    std::map<std::string, std::string> kv;
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw ParameterError("cannot open config file '" + config_path + "'");
      kv = io::parse_key_values(in);
    }
    for (const auto& [key, opt] : options_) {
      if (opt->count() > 0) kv[key] = values_.at(key);
    }
    return kv;
  }

 private:
  std::map<std::string, std::string> values_;
  std::map<std::string, CLI::Option*> options_;
};

std::string format_element(const RingElement& x) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < x.size(); ++i) os << (i ? " " : "") << x[i];
  os << ']';
  return os.str();
}

std::string take(std::map<std::string, std::string>& kv, const std::string& key, const std::string& fallback) {
  auto it = kv.find(key);
  if (it == kv.end()) return fallback;
  std::string v = it->second;
  kv.erase(it);
  return v;
}

int cmd_gen(const std::map<std::string, std::string>& raw, const std::string& secret_out) {
  auto kv = raw;
  const std::size_t n = io::ExperimentConfig::parse_unsigned("n", take(kv, "n", "16"));
  const auto q = static_cast<std::int64_t>(io::ExperimentConfig::parse_unsigned("q", take(kv, "q", "17")));
  const std::string seed_s = take(kv, "seed", "");
  if (seed_s.empty()) throw ParameterError("gen: --seed is required");
  const std::uint64_t seed = io::ExperimentConfig::parse_unsigned("seed", seed_s);
  const std::uint64_t count = io::ExperimentConfig::parse_unsigned("count", take(kv, "count", "1000"));
  const std::string chi0 = take(kv, "chi0", "gaussian:1");
  const std::string out = take(kv, "out", "");
  if (!kv.empty()) throw ParameterError("gen: unknown key '" + kv.begin()->first + "'");
  if (out.empty()) throw ParameterError("gen: --out is required");

  const RingPtr ring = RingParams::make(n, q);
  LweOracle oracle = io::seeded_oracle(ring, parse_distribution(chi0, q), seed);
  std::vector<Sample> samples;
  samples.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) samples.push_back(oracle.draw());
  std::ofstream os(out, std::ios::binary);
  if (!os) throw io::FormatError("cannot write '" + out + "'");
  io::write_stream(os, {static_cast<std::uint32_t>(n), static_cast<std::uint32_t>(q), seed, count}, samples);
  if (!secret_out.empty()) {
    std::ofstream ss(secret_out);
    ss << format_element(oracle.secret()) << '\n';
  }
  std::cout << "wrote " << count << " samples (n=" << n << ", q=" << q << ", seed=" << seed << ") to " << out << '\n';
  return kExitOk;
}

int cmd_experiment(const std::map<std::string, std::string>& kv) {
  const auto config = io::ExperimentConfig::from_map(kv);
  config.validate();
  const auto records = io::run_experiment(config);
  std::ofstream file;
  if (!config.out.empty()) {
    file.open(config.out);
    if (!file) throw io::FormatError("cannot write '" + config.out + "'");
  }
  std::ostream& os = config.out.empty() ? std::cout : file;
  os << io::kCsvHeader << '\n';
  for (const auto& r : records) io::write_csv_row(os, r);
  for (const auto& r : records) {
    if (r.exhausted) std::cerr << "warning: sample stream exhausted for " << bkw::to_string(r.variant) << '\n';
    if (!config.out.empty()) {
      std::cout << bkw::to_string(r.variant) << '/' << bkw::to_string(r.mode) << ": table size " << r.stats.total_rows
                << ", reduced samples " << r.stats.terminal << ", " << r.stats.seconds << " s\n";
    }
  }
  return kExitOk;
}

int cmd_attack(const std::map<std::string, std::string>& raw, bool quiet) {
  auto kv = raw;
  const std::size_t n = io::ExperimentConfig::parse_unsigned("n", take(kv, "n", "16"));
  const auto q = static_cast<std::int64_t>(io::ExperimentConfig::parse_unsigned("q", take(kv, "q", "17")));
  const std::string seed_s = take(kv, "seed", "");
  if (seed_s.empty()) throw ParameterError("attack: --seed is required");
  const std::uint64_t seed = io::ExperimentConfig::parse_unsigned("seed", seed_s);
  const std::string method = take(kv, "method", "bkw");
  const std::string chi0_spec = take(kv, "chi0", "point:0");
  const std::string scoring = take(kv, "scoring", "auto");
  AttackConfig cfg;
  cfg.block_size = io::ExperimentConfig::parse_unsigned("block_size", take(kv, "block_size", "4"));
  cfg.variant = bkw::parse_variant(take(kv, "variant", "advanced"));
  cfg.mode = bkw::parse_mode(take(kv, "mode", "od"));
  cfg.holdout = io::ExperimentConfig::parse_unsigned("holdout", take(kv, "holdout", "32"));
  cfg.max_inputs = io::ExperimentConfig::parse_unsigned("max_inputs", take(kv, "max_inputs", "1000000"));
  if (const std::string r = take(kv, "reduced", ""); !r.empty()) cfg.samples = io::ExperimentConfig::parse_unsigned("reduced", r);
  if (scoring == "support") {
    cfg.scoring = Scoring::support;
  } else if (scoring == "likelihood") {
    cfg.scoring = Scoring::likelihood;
  } else if (scoring != "auto") {
    throw ParameterError("attack: scoring must be auto, support or likelihood");
  }
  if (method != "bkw" && method != "sqrt") throw ParameterError("attack: method must be bkw or sqrt");
  if (!kv.empty()) throw ParameterError("attack: unknown key '" + kv.begin()->first + "'");

  const RingPtr ring = RingParams::make(n, q);
  cfg.chi0 = parse_distribution(chi0_spec, q);
  if (!quiet) cfg.progress = [](const std::string& msg) { std::cerr << "  " << msg << '\n'; };
  LweOracle oracle = io::seeded_oracle(ring, cfg.chi0, seed);
  const bkw::SampleSource source = [&oracle]() -> std::optional<Sample> { return oracle.draw(); };

  std::cout << "attack: method=" << method << " n=" << n << " q=" << q;
  if (method == "bkw") {
    std::cout << " B=" << cfg.block_size << " variant=" << bkw::to_string(cfg.variant)
              << " mode=" << bkw::to_string(cfg.mode);
  }
  std::cout << " chi0=" << cfg.chi0.describe() << " seed=" << seed << '\n';
  try {
    RingElement recovered = RingElement::zero(ring);
    if (method == "bkw") {
      const auto res = ring_bkw(ring, source, cfg);
      recovered = res.secret;
      std::cout << "scoring: " << to_string(res.scoring) << ", " << res.samples_per_subproblem
                << " reduced samples per subproblem, " << res.reports.size() << " subproblems\n";
      if (!quiet) {
        std::cerr << "  timings: reduction " << res.timings.reduction << " s, solve " << res.timings.solve
                  << " s, total " << res.timings.total << " s\n";
      }
    } else {
      SqrtConfig sc;
      sc.chi0 = cfg.chi0;
      sc.holdout = cfg.holdout;
      sc.samples = cfg.samples;
      const auto res = sqrt_search(ring, source, sc);
      recovered = res.secret;
      std::cout << "accepted " << res.accepted << " of " << res.draws << " draws\n";
    }
    std::cout << "recovered: " << format_element(recovered) << '\n';
    std::cout << "planted:   " << format_element(oracle.secret()) << '\n';
    const bool ok = recovered == oracle.secret();
    std::cout << "verdict: " << (ok ? "success" : "failure (holdout passed but secret differs)") << '\n';
    return ok ? kExitOk : kExitFailure;
  } catch (const ReductionStarved& e) {
    std::cout << "verdict: failure (" << e.what() << ")\n";
  } catch (const NonUniqueHypothesis& e) {
    std::cout << "verdict: failure (" << e.what() << ")\n";
  } catch (const NoSurvivorError& e) {
    std::cout << "verdict: failure (" << e.what() << ")\n";
  } catch (const HoldoutFailure& e) {
    std::cout << "recovered: " << format_element(e.candidate) << '\n';
    std::cout << "verdict: failure (" << e.what() << ")\n";
  } catch (const SearchTimeout& e) {
    std::cout << "verdict: failure (" << e.what() << ")\n";
  }
  return kExitFailure;
}

int cmd_verify(std::uint64_t seed, std::size_t trials, const std::string& fault) {
  selftest::Options opts;
  opts.seed = seed;
  opts.trials = trials;
  if (fault == "trace-sign") {
    opts.trace = [](const RingElement& x, const TowerParams& t) { return neg(trace(x, t)); };
  } else if (!fault.empty()) {
    throw ParameterError("verify: unknown fault '" + fault + "'");
  }
  bool all = true;
  for (const auto& r : selftest::run_all(opts)) {
    std::cout << (r.passed() ? "PASS " : "FAIL ") << r.name << ": " << r.checks - r.failures << '/' << r.checks
              << " checks";
    if (!r.passed()) std::cout << " (first failure: " << r.first_failure << ')';
    std::cout << '\n';
    all = all && r.passed();
  }
  std::cout << (all ? "all suites passed" : "some suites failed") << '\n';
  return all ? kExitOk : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ringbkw: BKW reduction and secret recovery for power-of-two cyclotomic Ring-LWE"};
  app.require_subcommand(1);

  std::string config_path;
  std::string secret_out;
  bool quiet = false;
  std::uint64_t verify_seed = 1;
  std::size_t verify_trials = 1000;
  std::string fault;

  FlagSet gen_flags;
  auto* gen = app.add_subcommand("gen", "write a seeded sample stream file");
  gen->add_option("--config", config_path, "key=value configuration file");
  gen_flags.add(gen, "n", "ring dimension (power of two)");
  gen_flags.add(gen, "q", "odd prime modulus");
  gen_flags.add(gen, "seed", "seed of the secret and the sample list");
  gen_flags.add(gen, "count", "number of samples");
  gen_flags.add(gen, "chi0", "coefficient error distribution, e.g. gaussian:3.2 or uniform:-1,0,1");
  gen_flags.add(gen, "out", "output file");
  gen->add_option("--secret-out", secret_out, "also write the planted secret as text");

  FlagSet exp_flags;
  auto* exp = app.add_subcommand("experiment", "run BKW reductions and print one CSV record per variant");
  exp->add_option("--config", config_path, "key=value configuration file");
  exp_flags.add(exp, "n", "ring dimension (power of two)");
  exp_flags.add(exp, "q", "odd prime modulus");
  exp_flags.add(exp, "block_size", "block size B (power of two dividing n)");
  exp_flags.add(exp, "variant", "ring_blind, traditional, advanced, a comma list, or all");
  exp_flags.add(exp, "mode", "od or ad");
  exp_flags.add(exp, "samples", "initial samples (ring-blind uses n times as many)");
  exp_flags.add(exp, "seed", "seed of the shared sample list");
  exp_flags.add(exp, "chi0", "coefficient error distribution");
  exp_flags.add(exp, "out", "CSV output file (default stdout)");
  exp_flags.add(exp, "input", "read samples from a stream file instead of generating them");

  FlagSet atk_flags;
  auto* atk = app.add_subcommand("attack", "recover a planted secret and report a verdict");
  atk->add_option("--config", config_path, "key=value configuration file");
  atk_flags.add(atk, "n", "ring dimension (power of two)");
  atk_flags.add(atk, "q", "odd prime modulus");
  atk_flags.add(atk, "block_size", "block size B; the target subring has dimension B");
  atk_flags.add(atk, "variant", "ring_blind, traditional or advanced");
  atk_flags.add(atk, "mode", "od or ad");
  atk_flags.add(atk, "chi0", "coefficient error distribution known to the attacker");
  atk_flags.add(atk, "seed", "seed of the planted secret and the sample oracle");
  atk_flags.add(atk, "scoring", "auto, support or likelihood");
  atk_flags.add(atk, "reduced", "reduced samples per subproblem (default: derived)");
  atk_flags.add(atk, "max_inputs", "cap on initial samples consumed by the reduction");
  atk_flags.add(atk, "holdout", "fresh samples used to verify the answer");
  atk_flags.add(atk, "method", "bkw (default) or sqrt (index-2 subring search)");
  atk->add_flag("--quiet", quiet, "suppress progress on stderr");

  auto* ver = app.add_subcommand("verify", "run the ring and tower self-test suites");
  ver->add_option("--seed", verify_seed, "seed for the random checks");
  ver->add_option("--trials", verify_trials, "random elements per parameter set");
  ver->add_option("--inject-fault", fault, "deliberately break a component (trace-sign)")->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (gen->parsed()) return cmd_gen(gen_flags.merged(config_path), secret_out);
    if (exp->parsed()) return cmd_experiment(exp_flags.merged(config_path));
    if (atk->parsed()) return cmd_attack(atk_flags.merged(config_path), quiet);
    if (ver->parsed()) return cmd_verify(verify_seed, verify_trials, fault);
  } catch (const ParameterError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const io::FormatError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}
