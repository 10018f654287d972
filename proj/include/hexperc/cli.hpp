#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "hexperc/errors.hpp"

namespace hexperc::cli {

enum class CommandKind { Sample, Exact, Clt, Pathsum, Paths, Figure2, Figure4 };
enum class Format { Csv, Json, Both };

/// Invalid invocation: unknown flag, missing value, out-of-range parameter.
class UsageError : public ParameterError {
public:
  using ParameterError::ParameterError;
};

/// Help or version was requested; carries the text to print.
class HelpRequested : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct Command {
  CommandKind kind = CommandKind::Sample;
  int s = 2;
  std::vector<int> s_list;
  int n = 2;
  std::vector<int> n_list;
  std::uint64_t samples = 0;
  std::uint64_t calibration_samples = 0;  // clt only; 0 means "same as samples"
  std::uint64_t seed = 0;
  int workers = 1;
  int budget = 30;
  std::uint64_t subset_cap = 0;
  std::uint64_t path_cap = 0;
  std::string graph;
  std::string out_dir = ".";
  Format format = Format::Csv;
  bool timestamp = true;
  std::vector<std::string> argv;  // the invocation, echoed into every output
};

/// argv excludes the program name. Throws UsageError or HelpRequested.
Command parse_invocation(const std::vector<std::string>& argv);

/// "10,20,30", "10..60", "10..60:10" or "10..60 step 10".
std::vector<int> parse_int_list(const std::string& text);

/// Default worker count: HEXPERC_WORKERS if set, else hardware concurrency.
int default_workers();

std::string version_string();

struct CommandResult {
  int exit_code = 0;
  nlohmann::json summary;
  std::vector<std::string> files;
};

/// Runs a validated command, writing artifacts under cmd.out_dir.
/// Module refusals surface as exit_code 3 with the message in the summary.
CommandResult execute(const Command& cmd);

/// Seed used for one (s, n) cell of a multi-run campaign.
std::uint64_t derive_seed(std::uint64_t seed, int s, int n);

}  // namespace hexperc::cli
