#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "modweyl/algebra.hpp"

namespace modweyl {

/// Malformed configuration: bad JSON, missing or mistyped fields, unknown
/// suite names, out-of-range values.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Suite names in report order.
const std::vector<std::string>& suite_names();
/// The theorem a suite checks, e.g. "Green imprimitivity theorem".
std::string suite_anchor(const std::string& suite);

/// One (G, d, alpha) system. An empty generator list means the trivial action.
struct SystemSpec {
  std::vector<int> factors;
  int d = 1;
  std::vector<Mat> generators;
  std::string action_name = "trivial";

  /// Builds and validates the action; throws StructuralError or ValidationError.
  Action build(double tol = kDefaultTol) const;
  std::string label() const;
};

/// G in {Z2, Z3, Z4, Z2xZ2} with (d=1, trivial), (d=2, trivial) and
/// (d=2, a fixed nontrivial action).
std::vector<SystemSpec> default_grid();

struct RunConfig {
  std::vector<SystemSpec> systems;
  std::vector<std::string> suites;
  std::vector<std::size_t> multiplicities{1, 2};
  std::vector<std::uint64_t> seeds{1};
  double tolerance = kDefaultTol;
  std::string report_path;
  /// Random samples per system in the sampling suites.
  std::size_t samples = 50;

  /// Throws ConfigError when an invariant is violated.
  void validate() const;
  /// Canonical JSON echo of the configuration.
  std::string to_json() const;
};

/// Parses a JSON configuration document; throws ConfigError.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

struct SuiteResult {
  std::string name;
  std::string anchor;
  bool pass = true;
  double worst_residual = 0.0;
  double tolerance = 0.0;  ///< the threshold this suite is judged against
  std::string witness;
  double wall_time = 0.0;
  std::string details;  ///< JSON array of per-case records
};

struct Report {
  std::string config;  ///< JSON echo
  std::uint64_t seed = 0;
  std::string version;
  std::vector<SuiteResult> suites;

  bool pass() const;
  std::string to_json() const;
};

/// Runs one suite over every configured system.
SuiteResult run_suite(const std::string& suite, const RunConfig& config);

/// Runs the configured suites, at most MODWEYL_THREADS at a time, and merges
/// the results in suite order. Does not write the report.
Report run(const RunConfig& config);

/// Writes through a temporary file and a rename.
void write_report(const Report& report, const std::string& path);

/// Decomposes random_heisenberg(alpha, m, seed) for the first configured
/// system; returns the JSON record {m, residuals, W_checksum, seed}.
std::string decompose_record(const RunConfig& config, std::size_t m, std::uint64_t seed, bool* pass = nullptr);

/// A short printed walkthrough of the Z2, d=1 case.
void demo(std::ostream& out);

}  // namespace modweyl
