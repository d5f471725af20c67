// Command-line front end: theta evaluation, single verifications and the
// batch suite. Exit codes: 0 pass, 1 verification failure, 2 usage/config error.

#include <cmath>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "siegelkit/detline.hpp"
#include "siegelkit/json_io.hpp"
#include "siegelkit/metrics.hpp"
#include "siegelkit/siegel.hpp"
#include "siegelkit/suite.hpp"
#include "siegelkit/theta.hpp"

namespace {

using nlohmann::json;
using namespace siegelkit;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

int theta_eval_command(const std::string& tau_file, const std::string& z_text, const std::string& char_text,
                       double eps, double max_radius) {
  const SiegelPoint tau = load_siegel_file(tau_file);
  const CVector z = parse_complex_vector(z_text);
  const ThetaCharacteristic ch = parse_characteristic(char_text, tau.genus());
  const ThetaResult r = theta_eval(ch, z, tau, {eps, max_radius});
  const json out{{"re", r.value.real()},
                 {"im", r.value.imag()},
                 {"terms", r.terms},
                 {"radius", r.radius},
                 {"error_bound", r.error_bound}};
  std::cout << out.dump() << '\n';
  return kExitPass;
}

int verify_norms_command(int g, const std::string& tau_file, std::optional<int> n) {
  const SiegelPoint tau = tau_file.empty() ? siegel_identity(g) : load_siegel_file(tau_file);
  if (tau.genus() != g) throw Error(ErrorCode::DimensionMismatch, "--g does not match the tau file");
  const QuadratureGrid grid(g, n.value_or(default_quadrature_n(g)));
  const CMatrix G = gram_matrix(tau, grid);
  const double expected = 1.0 / std::sqrt(tau.imag_det());
  json gram = json::array();
  double dev = 0.0;
  for (Eigen::Index i = 0; i < G.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < G.cols(); ++j) {
      row.push_back({G(i, j).real(), G(i, j).imag()});
      dev = std::max(dev, std::abs(G(i, j) - (i == j ? expected : 0.0)));
    }
    gram.push_back(std::move(row));
  }
  const double tol = g == 1 ? 1e-8 : 1e-6;
  const json out{{"gram", gram}, {"expected", expected}, {"max_abs_dev", dev}, {"n", grid.n_per_dim()},
                 {"pass", dev < tol}};
  std::cout << out.dump() << '\n';
  return dev < tol ? kExitPass : kExitFail;
}

int verify_torsion_command(int g) {
  const TorsionResult t = bost_torsion({g, 1.0, 1.0});
  const double closed = quillen_factor_principal(g);
  const bool matches = std::abs(t.quillen_factor - closed) <= 1e-14 * closed;
  const TorsionResult sq = theta_square_torsion(g);
  const json out{{"T", t.torsion},
                 {"quillen_factor", t.quillen_factor},
                 {"matches_closed_form", matches},
                 {"T_theta_square", sq.torsion},
                 {"quillen_factor_theta_square", sq.quillen_factor}};
  std::cout << out.dump() << '\n';
  return matches ? kExitPass : kExitFail;
}

int verify_curvature_command(const std::string& identity, int g, int samples, std::uint64_t seed, double step) {
  SuiteConfig cfg;
  cfg.g_list = {g};
  cfg.samples = samples;
  cfg.seed = seed;
  cfg.fd_step = step;
  const std::string name = "curvature:" + identity;
  const VerificationReport r = run_identity(name, cfg);
  json out{{"max_residual", std::isfinite(r.max_residual) ? json(r.max_residual) : json(nullptr)},
           {"samples", r.samples},
           {"pass", r.pass},
           {"tolerance", r.tolerance}};
  if (!r.error.empty()) out["error"] = r.error;
  std::cout << out.dump() << '\n';
  return r.pass ? kExitPass : kExitFail;
}

int suite_command(const std::string& config_path, const std::string& only, bool as_json,
                  std::optional<std::uint64_t> seed) {
  SuiteConfig cfg = config_path.empty() ? SuiteConfig{} : SuiteConfig::load(config_path);
  if (seed) cfg.seed = *seed;
  if (!only.empty()) {
    default_tolerance(only);
    cfg.identities = {only};
  }
  const auto reports = run_suite(cfg);
  bool all_pass = true;
  for (const auto& r : reports) {
    all_pass = all_pass && r.pass;
    if (as_json) {
      std::cout << r.to_json().dump() << '\n';
    } else {
      std::cout << (r.pass ? "PASS " : "FAIL ") << r.identity_name << "  g<=" << r.g
                << "  max_residual=" << r.max_residual << "  tol=" << r.tolerance;
      if (!r.error.empty()) std::cout << "  error: " << r.error;
      std::cout << '\n';
    }
  }
  return all_pass ? kExitPass : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"siegelkit: theta functions and curvature identities on the Siegel space"};
  app.require_subcommand(1);

  auto* theta = app.add_subcommand("theta", "Theta function evaluation");
  theta->require_subcommand(1);
  auto* theta_eval_cmd = theta->add_subcommand("eval", "Evaluate theta[a;b](z, tau)");
  std::string tau_file, z_text, char_text;
  double eps = 1e-14, max_radius = 40.0;
  theta_eval_cmd->add_option("--tau", tau_file, "SiegelPoint JSON file")->required();
  theta_eval_cmd->add_option("--z", z_text, "z as 're,im;re,im;...'")->required();
  theta_eval_cmd->add_option("--char", char_text, "characteristic 'a1,..;b1,..' (default zero)");
  theta_eval_cmd->add_option("--eps", eps, "absolute tail bound");
  theta_eval_cmd->add_option("--max-radius", max_radius, "cap on the whitened radius");

  auto* verify = app.add_subcommand("verify", "Single verifications");
  verify->require_subcommand(1);
  auto* norms = verify->add_subcommand("norms", "Gram matrix of the second-order theta basis");
  int g = 1;
  std::optional<int> n;
  std::string norms_tau;
  norms->add_option("--g", g, "genus (1 or 2)")->required();
  norms->add_option("--tau", norms_tau, "SiegelPoint JSON file (default i*I)");
  norms->add_option("--n", n, "quadrature nodes per dimension");

  auto* torsion = verify->add_subcommand("torsion", "Analytic torsion and Quillen factor");
  int torsion_g = 1;
  torsion->add_option("--g", torsion_g, "genus")->required()->check(CLI::PositiveNumber);

  auto* curvature = verify->add_subcommand("curvature", "Finite-difference curvature identities");
  std::string identity;
  int curv_g = 1, samples = 20;
  std::uint64_t seed = 12345;
  double step = 1e-3;
  curvature->add_option("--identity", identity, "hodge | theta-det | c1 | root")
      ->required()
      ->check(CLI::IsMember({"hodge", "theta-det", "c1", "root"}));
  curvature->add_option("--g", curv_g, "genus")->required()->check(CLI::Range(1, 8));
  curvature->add_option("--samples", samples, "random draws")->check(CLI::PositiveNumber);
  curvature->add_option("--seed", seed, "sampling seed");
  curvature->add_option("--step", step, "finite-difference step")->check(CLI::PositiveNumber);

  auto* suite = app.add_subcommand("suite", "Run the configured verification suite");
  std::string config_path, only;
  bool as_json = false;
  std::optional<std::uint64_t> suite_seed;
  suite->add_option("--config", config_path, "suite config JSON");
  suite->add_option("--only", only, "run a single identity");
  suite->add_flag("--json", as_json, "emit JSON lines");
  suite->add_option("--seed", suite_seed, "override the config seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (*theta_eval_cmd) return theta_eval_command(tau_file, z_text, char_text, eps, max_radius);
    if (*norms) return verify_norms_command(g, norms_tau, n);
    if (*torsion) return verify_torsion_command(torsion_g);
    if (*curvature) return verify_curvature_command(identity, curv_g, samples, seed, step);
    if (*suite) return suite_command(config_path, only, as_json, suite_seed);
  } catch (const Error& e) {
    std::cerr << "siegelkit: " << e.what() << '\n';
    switch (e.code()) {
      case ErrorCode::ConfigParseError:
      case ErrorCode::UnknownIdentity:
      case ErrorCode::InvalidArgument:
      case ErrorCode::DimensionMismatch:
      case ErrorCode::NotSymmetric:
      case ErrorCode::ImaginaryPartNotPositiveDefinite:
      case ErrorCode::InvalidPolicy:
        return kExitUsage;
      default:
        return kExitFail;
    }
  } catch (const std::exception& e) {
    std::cerr << "siegelkit: " << e.what() << '\n';
    return kExitFail;
  }
  return kExitUsage;
}
