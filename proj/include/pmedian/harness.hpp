#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pmedian/core.hpp"

namespace pmedian {

enum class Algorithm { alt, ialt, ratio };
enum class StartMethod { rand, cons, desc, comb };
enum class DescentVariant { best_improvement, first_improvement };

std::string_view to_string(Algorithm algorithm);
std::string_view to_string(StartMethod start);
std::string_view to_string(DescentVariant descent);
Algorithm parse_algorithm(std::string_view name);
StartMethod parse_start(std::string_view name);
DescentVariant parse_descent(std::string_view name);

struct RunConfig {
  std::size_t generated_n = 100;  // used when `file` is empty
  std::filesystem::path file;
  std::size_t p = 5;
  Algorithm algorithm = Algorithm::ratio;
  StartMethod start = StartMethod::rand;
  std::size_t replications = 10;
  std::uint64_t seed = 1;
  std::size_t transfer_limit = 20;
  DescentVariant descent = DescentVariant::first_improvement;
  std::size_t threads = 1;
};

// Relative gap under which a replication counts as reaching the best known value.
inline constexpr double kBestKnownHitTolerance = 1e-6;

struct RunReport {
  std::string instance_id;
  std::size_t n = 0;
  RunConfig config;
  std::vector<double> objectives;  // indexed by replication
  std::vector<double> seconds;
  double best = 0.0;
  double average = 0.0;
  std::optional<double> best_known;
  std::optional<double> pct_best_above;
  std::optional<double> pct_avg_above;
  std::size_t hits = 0;
  double total_seconds = 0.0;
};

// Seed of replication r: mix64(mix64(master) + r), so any replication can be
// replayed on its own.
std::uint64_t child_seed(std::uint64_t master, std::size_t replication);

Instance load_instance(const RunConfig& config);

// One replication: build the start, then run the improver.
Solution run_replication(const Instance& instance, const RunConfig& config, std::uint64_t seed);

RunReport run_experiment(const RunConfig& config);
RunReport run_experiment(const Instance& instance, const RunConfig& config);

void write_csv_header(std::ostream& out);
void write_csv_row(std::ostream& out, const RunReport& report);
void write_summary(std::ostream& out, const RunReport& report);

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
  bool informational = false;  // reported, never counted as a failure
};

// Analytic examples checked against the solvers and brute-force oracles.
std::vector<CheckResult> verify_examples(double triangle_tolerance = 1e-6);

}  // namespace pmedian
