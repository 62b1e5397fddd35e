#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "snforge/recheck.hpp"
#include "snforge/serialize.hpp"

namespace snforge::cli {

enum ExitCode : int {
  kInner = 0,
  kInputError = 1,
  kNotInner = 2,
  kUnsupported = 3,
  kRecheckFailed = 4,
};

int exit_code(Status s);

struct Options {
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> trials;
  std::optional<std::string> backend;
  bool emit_coefficients = false;
  /// Certificate path for the problem commands, output directory for demo.
  std::optional<std::string> output;
};

/// Flag, then problem file, then SNFORGE_SEED, then 0.
std::uint64_t resolve_seed(const Options& opts, const io::Problem& p);
unsigned resolve_trials(const Options& opts, const io::Problem& p);

/// Result of running a problem in process.
struct Outcome {
  int code = kInputError;
  Status status = Status::Unsupported;
  /// Empty for validate problems.
  io::json certificate;
  /// Human-readable lines.
  std::vector<std::string> report;
};

/// Runs whatever task the problem names. Throws InputError/DomainError for
/// invalid input.
Outcome run_problem(const io::Problem& p, const Options& opts);

io::json read_json_file(const std::string& path);
io::Problem read_problem(const std::string& path);
/// Write to a temporary sibling, then rename over path.
void write_atomic(const std::string& path, const std::string& content);

/// Problem commands. expected_task restricts the task the file may name.
int cmd_solve(const std::string& problem_path, const Options& opts, std::ostream& out, std::ostream& err,
              std::optional<io::Task> expected_task = std::nullopt);
int cmd_recheck(const std::string& problem_path, const std::string& certificate_path, std::ostream& out,
                std::ostream& err);
int cmd_demo(const std::string& name, const Options& opts, std::ostream& out, std::ostream& err);
int cmd_schema(const std::string& which, std::ostream& out, std::ostream& err);

/// Registry of built-in demonstrations.
const std::vector<std::string>& demo_names();

/// Solves the series problem at its order N and at a lower order with the
/// same seed, and compares the N certificate truncated to the lower order
/// against the direct one, canonically.
struct CoherenceResult {
  bool identical = false;
  std::string truncated;
  std::string direct;
};
CoherenceResult series_coherence(const HomSpec& phi, std::size_t lower_order, std::uint64_t seed, unsigned trials);

/// Entry point used by main(): parses argv with CLI11.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace snforge::cli
