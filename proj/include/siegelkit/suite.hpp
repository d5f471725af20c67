#pragma once

// Batch verification harness behind the command-line tool.
//
// Config document (JSON, every key optional):
//   {
//     "identities": ["norms", "torsion", "curvature:hodge", ...],
//     "g_list": [1, 2],
//     "samples": 20,
//     "seed": 12345,
//     "tolerances": {"curvature:hodge": 1e-6, ...},
//     "fd_step": 1e-3,
//     "quadrature_n": {"1": 64, "2": 24}
//   }

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "siegelkit/errors.hpp"

namespace siegelkit {

/// All identities in canonical order.
const std::vector<std::string>& known_identities();
/// Default tolerance for an identity; throws UnknownIdentity.
double default_tolerance(const std::string& identity);

struct SuiteConfig {
  std::vector<std::string> identities = known_identities();
  std::vector<int> g_list{1, 2};
  int samples = 20;
  std::uint64_t seed = 12345;
  std::map<std::string, double> tolerances;
  double fd_step = 1e-3;
  std::map<int, int> quadrature_n;

  double tolerance(const std::string& identity) const;
  int quadrature_points(int g) const;

  /// Throws ConfigParseError on malformed documents and UnknownIdentity on
  /// unrecognised identity names.
  static SuiteConfig from_json(const nlohmann::json& j);
  static SuiteConfig load(const std::filesystem::path& path);
};

struct VerificationReport {
  std::string identity_name;
  int g = 0;
  int samples = 0;
  std::uint64_t seed = 0;
  double max_residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  double wall_time_ms = 0.0;
  /// Non-empty when the identity raised; max_residual is then +inf.
  std::string error;

  nlohmann::json to_json(bool include_time = true) const;
};

/// Runs one identity over every g in config.g_list (torsion always covers
/// g = 1..8). Numeric failures are captured in the report.
VerificationReport run_identity(const std::string& identity, const SuiteConfig& config);

/// Runs config.identities concurrently; reports follow config order.
std::vector<VerificationReport> run_suite(const SuiteConfig& config);
std::vector<VerificationReport> run_suite(const std::filesystem::path& config_path);

}  // namespace siegelkit
