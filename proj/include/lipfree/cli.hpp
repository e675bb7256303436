#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

namespace lipfree::cli {

enum class Format { Human, Machine };

enum ExitStatus : int { kSuccess = 0, kVerificationFailed = 1, kInputError = 2 };

/// Size cap for the exhaustive scans: LIPFREE_SIZE_CAP when set to a positive
/// integer, 10 otherwise.
std::size_t default_size_cap();

struct ToolConfig {
  std::string command;
  std::optional<std::filesystem::path> space;
  std::optional<std::filesystem::path> element;
  std::optional<std::filesystem::path> function;
  std::optional<std::filesystem::path> weight;
  std::optional<std::filesystem::path> lambda;
  std::optional<std::filesystem::path> mu;
  std::optional<std::string> pair;     // "a,b"
  std::optional<std::string> epsilon;  // rational
  Format format = Format::Human;
  std::uint64_t seed = 1;
  std::size_t max_points = default_size_cap();
  unsigned jobs = 1;
};

/// Runs one command and writes its report to `out`, diagnostics to `err`.
/// Returns an ExitStatus; never throws for user errors.
int run_command(const ToolConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv into a ToolConfig and runs it.
int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace lipfree::cli
