#include "siegelkit/suite.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <future>
#include <limits>
#include <numbers>

#include "siegelkit/curvature.hpp"
#include "siegelkit/detline.hpp"
#include "siegelkit/metrics.hpp"
#include "siegelkit/sampling.hpp"
#include "siegelkit/theta.hpp"

namespace siegelkit {

namespace {

using nlohmann::json;
constexpr double kPi = std::numbers::pi;

// Sections of L_tau compared in the metric h; both sides are O(1) there.
double h_weight(const SiegelPoint& tau, const CVector& z) {
  return std::exp(-kPi * HermitianPairing(tau).imag_quadratic(z));
}

double norms_residual(const SuiteConfig& cfg, Rng& rng, int& g_max) {
  double worst = 0.0;
  for (int g : cfg.g_list) {
    if (g > 2) continue;  // closed-form norms only beyond g = 2
    g_max = std::max(g_max, g);
    const int draws = std::min(cfg.samples, g == 1 ? 10 : 3);
    const QuadratureGrid grid(g, cfg.quadrature_points(g));
    for (int s = 0; s < draws; ++s) {
      const SiegelPoint tau = random_siegel_point(g, rng);
      const CMatrix G = gram_matrix(tau, grid);
      const double expected = 1.0 / std::sqrt(tau.imag_det());
      const CMatrix dev = G - expected * CMatrix::Identity(G.rows(), G.cols());
      worst = std::max(worst, dev.cwiseAbs().maxCoeff());
    }
  }
  return worst;
}

double torsion_residual(Rng& rng, int& g_max) {
  double worst = 0.0;
  for (int g = 1; g <= 8; ++g) {
    const double factor = quillen_factor_principal(g);
    const TorsionResult t = bost_torsion({g, 1.0, 1.0});
    worst = std::max(worst, std::abs(t.quillen_factor - factor) / factor);
    worst = std::max(worst, std::abs(t.torsion - 0.5 * g * std::log(2.0 * kPi)));
  }
  g_max = 8;
  for (int s = 0; s < 100; ++s) {
    PolarizationData p{rng.uniform_int(1, 8), rng.uniform(0.1, 10.0), rng.uniform(0.1, 10.0)};
    const TorsionResult t = bost_torsion(p);
    // expanded form of the same closed expression
    const double direct =
        -0.5 * p.rho_c1 * (std::log(p.rho_c1) - p.g * std::log(2.0 * kPi) - std::log(p.rho_omega));
    worst = std::max(worst, std::abs(t.torsion - direct) / std::max(1.0, std::abs(direct)));
  }
  return worst;
}

template <class Check>
double with_step_retries(double step, Check&& check) {
  FDConfig fd;
  fd.step = step;
  for (int attempt = 0;; ++attempt) {
    try {
      return check(fd);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::LeftSiegelDomain || attempt == 2) throw;
      fd.step /= 10.0;
    }
  }
}

double curvature_residual(CurvatureIdentity id, const SuiteConfig& cfg, Rng& rng, int& g_max) {
  double worst = 0.0;
  for (int g : cfg.g_list) {
    g_max = std::max(g_max, g);
    for (int s = 0; s < cfg.samples; ++s) {
      const SiegelPoint tau = random_siegel_point(g, rng);
      if (id == CurvatureIdentity::C1) {
        const CVector z = random_z_in_cell(tau, rng);
        const CVector V = random_complex_vector(g, rng);
        const CVector W = random_complex_vector(g, rng);
        const LatticeVector gamma = random_lattice_vector(g, 1, rng);
        const C1Check c = verify_c1_theta_bundle(tau, z, V, W, gamma);
        const double scale = std::abs(c.at_z.expected.value);
        worst = std::max({worst, c.at_z.residual, c.at_shifted.residual, scale > 0 ? c.shift_gap / scale : 0.0});
        continue;
      }
      const TangentDirection X = random_tangent(g, rng);
      const TangentDirection Y = random_tangent(g, rng);
      const double r = with_step_retries(cfg.fd_step, [&](const FDConfig& fd) {
        switch (id) {
          case CurvatureIdentity::Hodge: return verify_hodge_curvature(tau, X, Y, fd).residual;
          case CurvatureIdentity::ThetaDet: return verify_theta_det_curvature(tau, X, Y, fd).residual;
          case CurvatureIdentity::Root: return verify_root_curvature(tau, X, Y, fd).residual;
          default: return std::numeric_limits<double>::infinity();
        }
      });
      worst = std::max(worst, r);
    }
  }
  return worst;
}

double symplectic_residual(const SuiteConfig& cfg, Rng& rng, int& g_max) {
  double worst = 0.0;
  for (int g : cfg.g_list) {
    g_max = std::max(g_max, g);
    for (int s = 0; s < cfg.samples; ++s) {
      const SiegelPoint tau = random_siegel_point(g, rng);
      const SymplecticMatrix M = random_symplectic_word(g, rng.uniform_int(1, 4), rng);
      const TangentDirection X = random_tangent(g, rng);
      const TangentDirection Y = random_tangent(g, rng);
      const SiegelPoint image = symplectic_act(M, tau);
      const cplx before = siegel_form(tau, X, Y).value;
      const cplx after =
          siegel_form(image, tangent_pushforward(M, tau, X), tangent_pushforward(M, tau, Y)).value;
      const double scale = std::max(
          std::abs(before), std::sqrt(std::abs(siegel_form(tau, X, X).value) * std::abs(siegel_form(tau, Y, Y).value)));
      worst = std::max(worst, std::abs(after - before) / scale);
    }
  }
  return worst;
}

double quasi_periodicity_residual(const SuiteConfig& cfg, Rng& rng, int& g_max) {
  double worst = 0.0;
  for (int g : cfg.g_list) {
    g_max = std::max(g_max, g);
    for (int s = 0; s < cfg.samples; ++s) {
      const SiegelPoint tau = random_siegel_point(g, rng);
      const ThetaSeries theta(ThetaCharacteristic::zero(g), tau);
      const CVector z = random_z_in_cell(tau, rng);
      const LatticeVector gamma = random_lattice_vector(g, 2, rng);
      const CVector shifted = z + gamma.point(tau);
      const cplx lhs = theta(shifted).value;
      const cplx rhs = factor_of_automorphy(gamma, z, tau) * theta(z).value;
      worst = std::max(worst, std::abs(lhs - rhs) * h_weight(tau, shifted));
      const cplx even = theta(-z).value - theta(z).value;
      worst = std::max(worst, std::abs(even) * h_weight(tau, z));
    }
  }
  return worst;
}

std::uint64_t identity_stream(const std::string& identity) {
  const auto& all = known_identities();
  return static_cast<std::uint64_t>(std::find(all.begin(), all.end(), identity) - all.begin());
}

}  // namespace

const std::vector<std::string>& known_identities() {
  static const std::vector<std::string> names{
      "norms",           "torsion",           "curvature:hodge",       "curvature:theta-det",
      "curvature:c1",    "curvature:root",    "symplectic-invariance", "quasi-periodicity"};
  return names;
}

double default_tolerance(const std::string& identity) {
  if (identity == "norms") return 1e-6;
  if (identity == "torsion") return 1e-13;
  if (identity == "curvature:hodge" || identity == "curvature:theta-det" || identity == "curvature:root")
    return 1e-6;
  if (identity == "curvature:c1") return 1e-9;
  if (identity == "symplectic-invariance") return 1e-6;
  if (identity == "quasi-periodicity") return 1e-10;
  throw Error(ErrorCode::UnknownIdentity, "unknown identity '" + identity + "'");
}

double SuiteConfig::tolerance(const std::string& identity) const {
  const auto it = tolerances.find(identity);
  return it != tolerances.end() ? it->second : default_tolerance(identity);
}

int SuiteConfig::quadrature_points(int g) const {
  const auto it = quadrature_n.find(g);
  return it != quadrature_n.end() ? it->second : default_quadrature_n(g);
}

SuiteConfig SuiteConfig::from_json(const json& j) {
  SuiteConfig cfg;
  if (!j.is_object()) throw Error(ErrorCode::ConfigParseError, "config must be a JSON object");
  try {
    if (j.contains("identities")) cfg.identities = j.at("identities").get<std::vector<std::string>>();
    if (j.contains("g_list")) cfg.g_list = j.at("g_list").get<std::vector<int>>();
    if (j.contains("samples")) cfg.samples = j.at("samples").get<int>();
    if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("fd_step")) cfg.fd_step = j.at("fd_step").get<double>();
    if (j.contains("tolerances")) {
      for (const auto& [name, value] : j.at("tolerances").items()) cfg.tolerances[name] = value.get<double>();
    }
    if (j.contains("quadrature_n")) {
      for (const auto& [g, value] : j.at("quadrature_n").items()) cfg.quadrature_n[std::stoi(g)] = value.get<int>();
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ConfigParseError, e.what());
  } catch (const std::invalid_argument& e) {
    throw Error(ErrorCode::ConfigParseError, std::string("quadrature_n keys must be integers: ") + e.what());
  }
  for (const auto& name : cfg.identities) default_tolerance(name);
  for (const auto& [name, value] : cfg.tolerances) default_tolerance(name);
  if (cfg.samples < 1) throw Error(ErrorCode::ConfigParseError, "samples must be positive");
  if (!(cfg.fd_step > 0.0)) throw Error(ErrorCode::ConfigParseError, "fd_step must be positive");
  for (int g : cfg.g_list)
    if (g < 1 || g > 8) throw Error(ErrorCode::ConfigParseError, "g_list entries must lie in 1..8");
  for (const auto& [g, n] : cfg.quadrature_n)
    if (g < 1 || n < 1) throw Error(ErrorCode::ConfigParseError, "quadrature_n needs positive g and n");
  return cfg;
}

SuiteConfig SuiteConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ConfigParseError, "cannot open config " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ConfigParseError, path.string() + ": " + e.what());
  }
  return from_json(j);
}

json VerificationReport::to_json(bool include_time) const {
  json j{{"identity_name", identity_name}, {"g", g},
         {"samples", samples},             {"seed", seed},
         {"max_residual", std::isfinite(max_residual) ? json(max_residual) : json(nullptr)},
         {"tolerance", tolerance},         {"pass", pass}};
  if (include_time) j["wall_time_ms"] = wall_time_ms;
  if (!error.empty()) j["error"] = error;
  return j;
}

VerificationReport run_identity(const std::string& identity, const SuiteConfig& config) {
  VerificationReport report;
  report.identity_name = identity;
  report.samples = config.samples;
  report.seed = config.seed;
  report.tolerance = config.tolerance(identity);

  const auto start = std::chrono::steady_clock::now();
  Rng rng(derive_seed(config.seed, identity_stream(identity)));
  int g_max = 0;
  try {
    if (identity == "norms")
      report.max_residual = norms_residual(config, rng, g_max);
    else if (identity == "torsion")
      report.max_residual = torsion_residual(rng, g_max);
    else if (identity == "symplectic-invariance")
      report.max_residual = symplectic_residual(config, rng, g_max);
    else if (identity == "quasi-periodicity")
      report.max_residual = quasi_periodicity_residual(config, rng, g_max);
    else if (identity.rfind("curvature:", 0) == 0)
      report.max_residual = curvature_residual(parse_curvature_identity(identity.substr(10)), config, rng, g_max);
    else
      throw Error(ErrorCode::UnknownIdentity, "unknown identity '" + identity + "'");
  } catch (const std::exception& e) {
    report.error = e.what();
    report.max_residual = std::numeric_limits<double>::infinity();
  }
  report.g = g_max;
  report.pass = report.error.empty() && report.max_residual <= report.tolerance;
  report.wall_time_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return report;
}

std::vector<VerificationReport> run_suite(const SuiteConfig& config) {
  std::vector<std::future<VerificationReport>> pending;
  pending.reserve(config.identities.size());
  for (const auto& name : config.identities)
    pending.push_back(std::async(std::launch::async, [&config, name] { return run_identity(name, config); }));
  std::vector<VerificationReport> reports;
  reports.reserve(pending.size());
  for (auto& f : pending) reports.push_back(f.get());
  return reports;
}

std::vector<VerificationReport> run_suite(const std::filesystem::path& config_path) {
  return run_suite(SuiteConfig::load(config_path));
}

}  // namespace siegelkit
