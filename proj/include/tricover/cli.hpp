#pragma once

// Command-line front end: verify, table and h0. Commands return their
// output instead of printing so tests can drive them directly.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace tricover {

enum class OutputFormat { text, json };

struct GlobalOptions {
  OutputFormat format = OutputFormat::text;
  std::optional<std::uint64_t> seed;
  std::optional<int> trials;
  std::optional<std::uint64_t> prime;
};

/// Exit codes: 0 all checks pass, 1 a check failed, 2 input/parse error.
struct CommandResult {
  int exit_code = 0;
  std::string out;
  std::string err;
};

CommandResult command_verify(const std::filesystem::path& spec, const GlobalOptions& opts);
CommandResult command_table(const std::optional<std::string>& only, const GlobalOptions& opts);
CommandResult command_h0(const std::string& expr, const std::filesystem::path& spec, const GlobalOptions& opts);

/// Parses `args` (without the program name) and runs the command.
CommandResult run_cli(const std::vector<std::string>& args);

}  // namespace tricover
