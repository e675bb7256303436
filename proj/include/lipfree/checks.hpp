#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace lipfree::checks {

/// Sampling and size limits for the property battery.
struct SuiteConfig {
  std::uint64_t seed = 1;
  std::size_t corpus_max = 10;   // corpus spaces for the molecule and f_pq scans
  std::size_t positive_max = 8;  // spaces for positive-ball vertex enumeration
  std::size_t vertex_max = 6;    // spaces for unit-ball vertex checks
  std::size_t random_max = 12;   // random spaces for molecule norms
  std::size_t scale_percent = 100;  // sample counts relative to the full battery

  /// Caps derived from one overall limit: nothing exceeds `max_points`.
  static SuiteConfig with_cap(std::uint64_t seed, std::size_t max_points);
};

struct CriterionResult {
  int number = 0;
  std::string title;
  bool passed = false;
  std::size_t instances = 0;
  std::size_t failure_count = 0;
  std::vector<std::string> failures;  // first few messages
  double seconds = 0;
};

constexpr int kCriterionCount = 10;

/// Runs one numbered criterion (1 to kCriterionCount). Exceptions inside a
/// criterion are recorded as failures, never propagated.
CriterionResult run_criterion(int number, const SuiteConfig& config);

const std::string& criterion_title(int number);

/// All criteria, spread over `jobs` threads; results come back in criterion order.
std::vector<CriterionResult> run_suite(const SuiteConfig& config, unsigned jobs = 1);

}  // namespace lipfree::checks
