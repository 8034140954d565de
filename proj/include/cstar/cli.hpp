#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "cstar/json_io.hpp"
#include "cstar/kernels.hpp"

namespace cstar::cli {

enum class Command { example, gns, sweep };
enum class Format { json, text };

/// Exit codes: 0 everything passed, 1 a certificate or law failed,
/// 2 usage or parse error.
inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;

using TolOverrides = std::map<std::string, double, std::less<>>;

struct RunConfig {
  Command command = Command::example;
  std::optional<std::string> example_id;
  std::optional<std::string> input_path;
  std::uint64_t seed = 0;
  int instances = 100;
  TolOverrides tol_overrides;
  std::optional<std::string> output;
  Format format = Format::json;
  Execution exec = Execution::parallel;
};

struct CommandResult {
  Json report;
  int exit_code = kExitPass;
};

/// Golden reproductions: "qubit" (spin-up vector state) and "epr" (singlet
/// restricted to the first factor).  The override key "example" (or "all")
/// replaces the certificate tolerance, default 1e-9.
CommandResult run_example(const std::string& id, const TolOverrides& tol_overrides = {});

/// GNS report for a state given as JSON, optionally with a morphism whose
/// L_f is reported as well.  Throws ParseError on malformed input.
CommandResult run_gns(const Json& input);
CommandResult run_gns_file(const std::string& path);

/// All law checks.  The key "all" sets every law tolerance at once.
CommandResult run_sweep_command(std::uint64_t seed, int instances, const TolOverrides& tol_overrides,
                                Execution exec = Execution::parallel);

CommandResult execute(const RunConfig& config);

/// Human-readable rendering of a report.
std::string format_text(const Json& report);

/// Parses "law=value" or a bare "value" (stored under "all").
std::pair<std::string, double> parse_tol_override(const std::string& text);

int main(int argc, char** argv);

}  // namespace cstar::cli
