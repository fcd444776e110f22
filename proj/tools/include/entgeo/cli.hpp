#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace entgeo::cli {

enum class Command { Fit, Classify, Benchmark, BeSweep, DistCompare, Capacity, Protocol, Info };

const char* to_string(Command c);

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitSolver = 3;

struct RunConfig {
  Command command = Command::Info;
  std::uint64_t seed = 7;
  std::vector<double> eta_grid;
  // Text the grid was given as, echoed in metadata.
  std::string eta_spec;
  int d_a = 2;
  int d_b = 2;
  int sample_size = 1000;
  std::string output_path;
  double eps = 1e-6;

  // be-sweep
  int a_points = 1000;
  // classify / info
  std::string state_path;
  std::string model_path;
  std::string emit;
  // capacity
  bool erasure = false;
  std::vector<double> eps_grid;
  std::string eps_grid_spec;
  std::string channel_path;
  double tol = 1e-10;
  // protocol
  std::string protocol;
  double theta = 0.78539816339744831;
  // Omit the timestamp comment, for byte-comparable output.
  bool no_timestamp = false;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Throws ConfigError when a value is outside its documented range or a
// command-specific field is missing.
void validate(const RunConfig& config);

/// Executes one command. Files are written through a temporary and renamed, so
/// a failed run leaves no partial output. Returns an exit code; diagnostics go
/// to `err`, summaries to `out`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

// Parses argv-style arguments (without the program name) and calls run().
int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// "start..end:step" (inclusive of end within step/2), a comma list, or a
/// single number. Values are rounded to 12 decimals.
std::vector<double> parse_grid(const std::string& text);

// "2x3" -> {2, 3}.
std::pair<int, int> parse_dims(const std::string& text);

}  // namespace entgeo::cli
