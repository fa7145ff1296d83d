#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "lienard/integrator.hpp"
#include "lienard/system.hpp"

namespace lienard::cli {

enum class Command { simulate, cycles, alphabar, check, phi, reproduce };
enum class Format { csv, json, both };

/// Process exit statuses.
enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kModelError = 2,
  kNumericalError = 3,
  kGoldenMismatch = 4,
};

struct RunConfig {
  Command command = Command::cycles;
  /// Exactly one of builtin / model_path is used (reproduce needs neither).
  std::string builtin;
  Params params;
  std::filesystem::path model_path;
  std::optional<double> y0;
  std::optional<Interval> alpha_range;
  std::optional<std::string> theorem;
  int grid = 400;
  StepControl ctrl{};
  std::filesystem::path out_dir = "out";
  Format format = Format::both;
  std::string target = "vdp-table";
  std::filesystem::path golden_dir;
};

/// Executes one command and writes its artifacts under config.out_dir.
/// Human-readable progress goes to `out`, diagnostics to `err`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses the command line (CLI11) and calls run().
int main_entry(int argc, char** argv);

/// Parses "A:B" into an interval; throws ConfigError.
Interval parse_range(const std::string& text);

}  // namespace lienard::cli
