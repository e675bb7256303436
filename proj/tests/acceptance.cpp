// Acceptance battery: one PASS/FAIL line per criterion, exit status 0 only when all pass.

#include "lipfree/checks.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <string>
#include <sys/wait.h>

namespace {

constexpr double kSuiteBudgetSeconds = 300;

bool report(int number, const std::string& title, bool passed, const std::string& detail) {
  std::cout << "criterion " << number << ": " << (passed ? "PASS" : "FAIL") << "  " << title << "  [" << detail << "]"
            << std::endl;
  return passed;
}

// The CLI check-suite on the default corpus, timed end to end.
bool full_suite_run() {
  const std::string command = std::string(LIPFREE_CLI_PATH) + " check-suite --format machine --seed 1 --max-points 10";
  const auto start = std::chrono::steady_clock::now();
  FILE* pipe = ::popen(command.c_str(), "r");
  if (!pipe) return report(11, "check-suite runtime", false, "could not start the CLI");
  std::string output;
  char buffer[4096];
  while (std::size_t n = std::fread(buffer, 1, sizeof buffer, pipe)) output.append(buffer, n);
  const int raw = ::pclose(pipe);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const int status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  const bool passed = status == 0 && seconds < kSuiteBudgetSeconds &&
                      output.find("\"passed\": true") != std::string::npos;
  return report(11, "check-suite runtime", passed,
                "exit " + std::to_string(status) + ", " + std::to_string(seconds) + " s, budget " +
                    std::to_string(static_cast<int>(kSuiteBudgetSeconds)) + " s");
}

}  // namespace

int main() {
  const lipfree::checks::SuiteConfig config;
  bool all = true;
  for (int number = 1; number <= lipfree::checks::kCriterionCount; ++number) {
    const auto r = lipfree::checks::run_criterion(number, config);
    all = report(number, r.title, r.passed,
                 std::to_string(r.instances) + " instances, " + std::to_string(r.failure_count) + " failures, " +
                     std::to_string(r.seconds) + " s") &&
          all;
    for (const auto& f : r.failures) std::cout << "    " << f << "\n";
  }
  all = full_suite_run() && all;
  std::cout << (all ? "all criteria passed" : "some criteria FAILED") << std::endl;
  return all ? EXIT_SUCCESS : EXIT_FAILURE;
}
