#include <cstdint>
#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "modweyl/errors.hpp"
#include "modweyl/harness.hpp"

namespace {

constexpr int kPass = 0;
constexpr int kSuiteFailure = 1;
constexpr int kInvalidInput = 2;

int verify(const std::string& config_path, std::optional<double> tol, std::optional<std::uint64_t> seed,
           std::string report_path) {
  modweyl::RunConfig cfg = modweyl::load_config(config_path);
  if (tol) cfg.tolerance = *tol;
  if (seed) cfg.seeds = {*seed};
  if (!report_path.empty()) cfg.report_path = report_path;
  if (cfg.report_path.empty()) throw modweyl::ConfigError("no report path: pass --report or set \"report\"");
  cfg.validate();

  const modweyl::Report report = modweyl::run(cfg);
  modweyl::write_report(report, cfg.report_path);
  for (const auto& s : report.suites) {
    std::cout << (s.pass ? "PASS " : "FAIL ") << s.name << "  worst " << s.worst_residual << " (tol " << s.tolerance
              << ", " << s.wall_time << " s)";
    if (!s.pass) std::cout << "  at " << s.witness;
    std::cout << "\n";
  }
  std::cout << "report written to " << cfg.report_path << "\n";
  return report.pass() ? kPass : kSuiteFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite covariant Stone-von Neumann verification"};
  app.set_version_flag("--version", std::string(MODWEYL_VERSION));
  app.require_subcommand(1);

  std::string config_path, report_path;
  std::optional<double> tol;
  std::optional<std::uint64_t> seed;
  CLI::App* verify_cmd = app.add_subcommand("verify", "run the configured suites and write a JSON report");
  verify_cmd->add_option("--config", config_path, "configuration JSON")->required();
  verify_cmd->add_option("--tol", tol, "override the tolerance");
  verify_cmd->add_option("--seed", seed, "override the seed list with a single seed");
  verify_cmd->add_option("--report", report_path, "report path (overrides the config)");

  std::size_t m = 1;
  std::uint64_t dseed = 1;
  CLI::App* decompose_cmd = app.add_subcommand("decompose", "decompose a seeded random Heisenberg representation");
  decompose_cmd->add_option("--config", config_path, "configuration JSON")->required();
  decompose_cmd->add_option("--m", m, "multiplicity")->required();
  decompose_cmd->add_option("--seed", dseed, "seed of the random conjugating unitary")->required();

  CLI::App* demo_cmd = app.add_subcommand("demo", "print a short walkthrough");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kInvalidInput;
  }

  try {
    if (*verify_cmd) return verify(config_path, tol, seed, report_path);
    if (*decompose_cmd) {
      const modweyl::RunConfig cfg = modweyl::load_config(config_path);
      bool pass = false;
      std::cout << modweyl::decompose_record(cfg, m, dseed, &pass);
      return pass ? kPass : kSuiteFailure;
    }
    if (*demo_cmd) {
      modweyl::demo(std::cout);
      return kPass;
    }
  } catch (const modweyl::ConfigError& e) {
    std::cerr << "invalid configuration: " << e.what() << "\n";
    return kInvalidInput;
  } catch (const modweyl::StructuralError& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kInvalidInput;
  } catch (const modweyl::ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kInvalidInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kSuiteFailure;
  }
  return kInvalidInput;
}
