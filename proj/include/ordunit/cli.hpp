#pragma once

// Command-line front end. Each subcommand builds a Report; the report's exit
// code is 0 when every section passes, 1 on a property violation and 2 on
// input errors.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ordunit/json_io.hpp"
#include "ordunit/report.hpp"

namespace ordunit::cli {

enum class Format { Text, Json };

struct RunConfig {
  std::string command;
  std::optional<std::string> space_path;
  std::optional<std::string> functional_path;
  std::optional<std::string> operator_path;
  std::optional<std::string> partial_path;
  std::optional<std::string> sequence_path;
  std::uint64_t seed = 1;
  std::size_t samples = kDefaultSamples;
  std::optional<double> tol;
  Format format = Format::Text;
  /// Adds wall-clock time to JSON output (off by default so reports are
  /// byte-reproducible).
  bool timing = false;

  // norm / openness
  std::vector<std::string> points;
  // extend
  std::vector<std::string> targets;
  std::string rule = "midpoint";
  // openness
  double epsilon = 0.25;
  double delta = 0.25;
  std::size_t budget = 1000;
  std::size_t targets_per_check = 64;
  // compact
  std::size_t min_length = 2;
  std::size_t truncation = 64;
};

struct Section {
  std::string name;
  bool pass = true;
  /// Gallery only: whether the underlying property is expected to hold.
  std::optional<bool> expected;
  std::vector<PropertyReport> checks;
  io::json payload = io::json::object();
};

struct Report {
  std::string command;
  io::json config = io::json::object();
  std::vector<Section> sections;
  std::string error;
  int exit_code = 0;
  double elapsed_ms = 0.0;

  void finish();
};

Report run_check(const RunConfig& config);
Report run_norm(const RunConfig& config);
Report run_extend(const RunConfig& config);
Report run_openness(const RunConfig& config);
Report run_compact(const RunConfig& config);
Report run_gallery(const RunConfig& config);

/// Dispatches on config.command; input errors become exit code 2.
Report run(const RunConfig& config);

io::json to_json(const Report& report, bool timing);
void write_text(std::ostream& out, const Report& report);

/// Parses argv, runs, prints, and returns the exit code.
int main(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace ordunit::cli
