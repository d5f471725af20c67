#include "siegelkit/curvature.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "siegelkit/metrics.hpp"

namespace siegelkit {

namespace {

constexpr double kPi = std::numbers::pi;

// D(h) = (1/4) [f_ac + f_bd + i (f_ad - f_bc)] with s = a + ib, t = c + id;
// each mixed real derivative by the 4-point central difference.
template <class Eval>
cplx mixed_wirtinger_once(Eval&& eval, double h) {
  const cplx re(h, 0.0), im(0.0, h);
  auto mixed = [&](cplx ds, cplx dt) {
    return (eval(ds, dt) - eval(ds, -dt) - eval(-ds, dt) + eval(-ds, -dt)) / (4.0 * h * h);
  };
  const double f_ac = mixed(re, re);
  const double f_bd = mixed(im, im);
  const double f_ad = mixed(re, im);
  const double f_bc = mixed(im, re);
  return 0.25 * cplx(f_ac + f_bd, f_ad - f_bc);
}

template <class Eval>
cplx mixed_wirtinger(Eval&& eval, const FDConfig& cfg) {
  if (!(cfg.step > 0.0) || !(cfg.step_ratio > 1.0))
    throw Error(ErrorCode::InvalidArgument, "FD step must be positive and step_ratio > 1");
  const cplx coarse = mixed_wirtinger_once(eval, cfg.step);
  if (!cfg.richardson) return coarse;
  const double r2 = cfg.step_ratio * cfg.step_ratio;
  const cplx fine = mixed_wirtinger_once(eval, cfg.step / cfg.step_ratio);
  return (r2 * fine - coarse) / (r2 - 1.0);
}

double scaled_residual(cplx fd, cplx expected, double scale) {
  const double diff = std::abs(fd - expected);
  return scale > 0.0 ? diff / scale : diff;
}

CurvatureCheck compare_with_siegel(cplx fd, cplx coefficient, const SiegelPoint& tau,
                                   const TangentDirection& X, const TangentDirection& Y) {
  const cplx expected = coefficient * siegel_form(tau, X, Y).value;
  const double xx = std::abs(siegel_form(tau, X, X).value);
  const double yy = std::abs(siegel_form(tau, Y, Y).value);
  const double scale = std::max(std::abs(expected), std::abs(coefficient) * std::sqrt(xx * yy));
  return {{fd}, {expected}, scaled_residual(fd, expected, scale)};
}

}  // namespace

const char* to_string(CurvatureIdentity id) {
  switch (id) {
    case CurvatureIdentity::Hodge: return "hodge";
    case CurvatureIdentity::ThetaDet: return "theta-det";
    case CurvatureIdentity::Root: return "root";
    case CurvatureIdentity::C1: return "c1";
  }
  return "unknown";
}

CurvatureIdentity parse_curvature_identity(const std::string& name) {
  if (name == "hodge") return CurvatureIdentity::Hodge;
  if (name == "theta-det") return CurvatureIdentity::ThetaDet;
  if (name == "root") return CurvatureIdentity::Root;
  if (name == "c1") return CurvatureIdentity::C1;
  throw Error(ErrorCode::UnknownIdentity, "unknown curvature identity '" + name + "'");
}

cplx CurvatureConvention::coefficient(CurvatureIdentity id, int g) const {
  switch (id) {
    case CurvatureIdentity::Hodge: return hodge;
    case CurvatureIdentity::ThetaDet: return theta_det * std::ldexp(1.0, g - 2);
    case CurvatureIdentity::Root: return root;
    case CurvatureIdentity::C1: return c1;
  }
  throw Error(ErrorCode::UnknownIdentity, "unknown curvature identity");
}

const CurvatureConvention& CurvatureConvention::standard() {
  static const CurvatureConvention table{};
  return table;
}

Form11Value ddbar_fd(const std::function<double(const SiegelPoint&)>& f, const SiegelPoint& tau,
                     const TangentDirection& X, const TangentDirection& Y, const FDConfig& cfg) {
  if (X.genus() != tau.genus() || Y.genus() != tau.genus())
    throw Error(ErrorCode::DimensionMismatch, "ddbar_fd arguments differ in genus");
  auto eval = [&](cplx s, cplx t) {
    const CMatrix p = tau.tau() + s * X.matrix() + t * Y.matrix();
    try {
      return f(validate_siegel(p));
    } catch (const Error& e) {
      if (e.code() == ErrorCode::ImaginaryPartNotPositiveDefinite || e.code() == ErrorCode::NotSymmetric)
        throw Error(ErrorCode::LeftSiegelDomain, "stencil point left the Siegel space; shrink the step");
      throw;
    }
  };
  return {mixed_wirtinger(eval, cfg)};
}

Form11Value ddbar_fd_z(const std::function<double(const CVector&)>& f, const CVector& z, const CVector& V,
                       const CVector& W, const FDConfig& cfg) {
  if (V.size() != z.size() || W.size() != z.size())
    throw Error(ErrorCode::DimensionMismatch, "ddbar_fd_z arguments differ in dimension");
  auto eval = [&](cplx s, cplx t) { return f(z + s * V + t * W); };
  return {mixed_wirtinger(eval, cfg)};
}

Form11Value polarization_form(const SiegelPoint& tau, const CVector& V, const CVector& W) {
  if (V.size() != tau.genus() || W.size() != tau.genus())
    throw Error(ErrorCode::DimensionMismatch, "polarization_form arguments differ in genus");
  const cplx s = V.transpose() * (tau.imag_inverse().cast<cplx>() * W.conjugate());
  return {cplx(0.0, 0.5) * s};
}

CurvatureCheck verify_logmetric_curvature(const LogMetricForm& f, cplx coefficient, const SiegelPoint& tau,
                                          const TangentDirection& X, const TangentDirection& Y,
                                          const FDConfig& cfg) {
  const cplx fd = ddbar_fd(f.f, tau, X, Y, cfg).value;
  return compare_with_siegel(fd, coefficient, tau, X, Y);
}

CurvatureCheck verify_hodge_curvature(const SiegelPoint& tau, const TangentDirection& X,
                                      const TangentDirection& Y, const FDConfig& cfg,
                                      const CurvatureConvention& conv) {
  const int g = tau.genus();
  return verify_logmetric_curvature(hodge_logmetric(g), conv.coefficient(CurvatureIdentity::Hodge, g), tau, X,
                                    Y, cfg);
}

ThetaDetCheck verify_theta_det_curvature(const SiegelPoint& tau, const TangentDirection& X,
                                         const TangentDirection& Y, const FDConfig& cfg,
                                         const CurvatureConvention& conv) {
  const int g = tau.genus();
  ThetaDetCheck out;
  static_cast<CurvatureCheck&>(out) = verify_logmetric_curvature(
      theta_det_logmetric(g), conv.coefficient(CurvatureIdentity::ThetaDet, g), tau, X, Y, cfg);
  const double T = bost_torsion({g, 1.0, 1.0}).torsion;
  const cplx quillen = ddbar_fd(theta_det_quillen_logmetric(g, T).f, tau, X, Y, cfg).value;
  out.quillen_gap = std::abs(quillen - out.fd.value);
  return out;
}

CurvatureCheck verify_root_curvature(const SiegelPoint& tau, const TangentDirection& X,
                                     const TangentDirection& Y, const FDConfig& cfg,
                                     const CurvatureConvention& conv) {
  const int g = tau.genus();
  const LogMetricForm root = root_dual_logmetric(theta_det_logmetric(g), 1 << (g - 1));
  return verify_logmetric_curvature(root, conv.coefficient(CurvatureIdentity::Root, g), tau, X, Y, cfg);
}

C1Check verify_c1_theta_bundle(const SiegelPoint& tau, const CVector& z, const CVector& V, const CVector& W,
                               const LatticeVector& gamma, const FDConfig& cfg, C1Mode mode,
                               const CurvatureConvention& conv) {
  const int g = tau.genus();
  if (z.size() != g || gamma.genus() != g)
    throw Error(ErrorCode::DimensionMismatch, "verify_c1 arguments differ in genus");
  const HermitianPairing H(tau);
  std::function<double(const CVector&)> f;
  if (mode == C1Mode::WeightOnly) {
    f = [H](const CVector& p) { return 2.0 * kPi * H.imag_quadratic(p); };
  } else {
    auto series = std::make_shared<const ThetaSeries>(ThetaCharacteristic::zero(g), tau);
    f = [H, series](const CVector& p) {
      return -std::log(std::norm((*series)(p).value)) + 2.0 * kPi * H.imag_quadratic(p);
    };
  }

  const cplx coefficient = conv.coefficient(CurvatureIdentity::C1, g);
  const cplx expected = coefficient * polarization_form(tau, V, W).value;
  const double scale =
      std::max(std::abs(expected), std::abs(coefficient) * std::sqrt(std::abs(polarization_form(tau, V, V).value) *
                                                                     std::abs(polarization_form(tau, W, W).value)));
  auto check_at = [&](const CVector& p) {
    const cplx fd = ddbar_fd_z(f, p, V, W, cfg).value;
    return CurvatureCheck{{fd}, {expected}, scaled_residual(fd, expected, scale)};
  };
  C1Check out;
  out.at_z = check_at(z);
  out.at_shifted = check_at(z + gamma.point(tau));
  out.shift_gap = std::abs(out.at_z.fd.value - out.at_shifted.fd.value);
  return out;
}

}  // namespace siegelkit
