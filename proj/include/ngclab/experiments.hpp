#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "ngclab/rng.hpp"

namespace ngclab {

struct CsvRow {
  std::string suite;
  std::string params;  // "key=value;key=value"
  std::string metric;
  double value = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  std::uint64_t trials = 0;
  std::string seed;  // Seed::describe() of the suite seed
};

std::string csv_header();
std::string to_csv(const CsvRow& row);
// Shortest round-trip decimal form, '.' separator regardless of locale.
std::string format_number(double v);

using RowSink = std::function<void(const CsvRow&)>;

struct SuiteOutcome {
  bool pass = true;
  std::vector<std::string> failures;
};

// Each suite emits rows through `sink` as they are produced and reports
// whether every declared tolerance held.
SuiteOutcome suite_partition_stats(std::uint32_t w, std::uint64_t trials, const Seed& seed, const RowSink& sink);
SuiteOutcome suite_reduce_check(std::uint32_t m, std::uint32_t t, std::uint64_t trials, const Seed& seed,
                                const RowSink& sink);
SuiteOutcome suite_stream_run(std::uint32_t n, std::uint32_t k, const std::string& algorithm, double epsilon,
                              std::uint32_t r, const std::string& mode, std::uint64_t trials, const Seed& seed,
                              const RowSink& sink);
SuiteOutcome suite_bias_scan(std::uint32_t m, std::uint32_t logA, std::uint32_t k, std::uint64_t trials,
                             const Seed& seed, const RowSink& sink);
SuiteOutcome suite_stochastic_stats(double c, std::uint32_t edges, std::uint64_t trials, const Seed& seed,
                                    const RowSink& sink);
SuiteOutcome suite_walk_cover(std::uint32_t k, std::uint32_t m, std::uint32_t instances, std::uint64_t walk_budget,
                              std::uint64_t cover_trials, const Seed& seed, const RowSink& sink);

// key=value lines; '#' comments and blank lines ignored.
std::map<std::string, std::string> read_config_file(const std::string& path);

}  // namespace ngclab
