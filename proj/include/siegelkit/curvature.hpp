#pragma once

// Finite-difference ddbar on the Siegel space and on C^g, and verifiers for
// the curvature identities of the Hodge, theta-determinant, root and theta
// line bundles.
//
// Every curvature here is obtained as R = ddbar f with f = -log ||sigma||^2
// for an explicit holomorphic frame sigma, evaluated with the shared (1,1)
// convention documented in siegel.hpp. The expected value of R(X, Y) is
// coefficient(identity, g) * reference(X, Y), with the coefficients taken
// from this table (the only place the R / sqrt(-1) R / omega bookkeeping lives):
//
//   identity    stated as                               coefficient   reference
//   hodge       R = -(sqrt(-1)/2) omega_S               -i/2          omega_S
//   theta-det   sqrt(-1) R = 2^{g-2} omega_S            -i 2^{g-2}    omega_S
//   root        R = (sqrt(-1)/2) omega_S                 i/2          omega_S
//   c1          -(sqrt(-1)/2pi) ddbar log||s||^2 = omega  -2 pi i      omega_tau
//
// For c1, f = -log ||s||_h^2 so c1 = (sqrt(-1)/2pi) R, i.e. R = -2 pi i omega_tau.

#include <functional>
#include <string>

#include "siegelkit/detline.hpp"
#include "siegelkit/siegel.hpp"
#include "siegelkit/theta.hpp"

namespace siegelkit {

struct FDConfig {
  /// Increment of each real stencil parameter.
  double step = 1e-3;
  bool richardson = true;
  double step_ratio = 2.0;

  /// Defaults for ddbar in the torus variable, where the Hermitian weight is
  /// quadratic and a larger step only reduces cancellation.
  static FDConfig torus() { return {0.05, true, 2.0}; }
};

enum class CurvatureIdentity { Hodge, ThetaDet, Root, C1 };

const char* to_string(CurvatureIdentity id);
/// Accepts "hodge", "theta-det", "root", "c1"; throws UnknownIdentity.
CurvatureIdentity parse_curvature_identity(const std::string& name);

struct CurvatureConvention {
  cplx hodge{0.0, -0.5};
  cplx theta_det{0.0, -1.0};  // times 2^{g-2}
  cplx root{0.0, 0.5};
  cplx c1{0.0, -2.0 * 3.141592653589793238462643383279502884};

  cplx coefficient(CurvatureIdentity id, int g) const;
  static const CurvatureConvention& standard();
};

/// (ddbar f)(X, Y) = d_s d_{t-bar} f(tau + s X + t Y) at 0 by the 16-point
/// central stencil over the four real parameters of (s, t); Richardson-
/// extrapolated when cfg.richardson. Throws LeftSiegelDomain when a stencil
/// point leaves the Siegel space.
Form11Value ddbar_fd(const std::function<double(const SiegelPoint&)>& f, const SiegelPoint& tau,
                     const TangentDirection& X, const TangentDirection& Y, const FDConfig& cfg = {});

/// Same stencil for f on C^g at z along (V, W).
Form11Value ddbar_fd_z(const std::function<double(const CVector&)>& f, const CVector& z,
                       const CVector& V, const CVector& W, const FDConfig& cfg = FDConfig::torus());

/// omega_tau(V, W) = (i/2) sum_ij (Im tau)^{-1}_ij V_i conj(W_j).
Form11Value polarization_form(const SiegelPoint& tau, const CVector& V, const CVector& W);

struct CurvatureCheck {
  Form11Value fd;
  Form11Value expected;
  /// |fd - expected| / scale, scale = max(|expected(X,Y)|,
  /// |coefficient| sqrt(|ref(X,X)| |ref(Y,Y)|)); absolute when scale = 0.
  double residual = 0.0;
};

CurvatureCheck verify_hodge_curvature(const SiegelPoint& tau, const TangentDirection& X,
                                      const TangentDirection& Y, const FDConfig& cfg = {},
                                      const CurvatureConvention& conv = CurvatureConvention::standard());

struct ThetaDetCheck : CurvatureCheck {
  /// |ddbar f_Quillen - ddbar f_L2|, the two metrics differing by exp(T).
  double quillen_gap = 0.0;
};

ThetaDetCheck verify_theta_det_curvature(const SiegelPoint& tau, const TangentDirection& X,
                                         const TangentDirection& Y, const FDConfig& cfg = {},
                                         const CurvatureConvention& conv = CurvatureConvention::standard());

/// 2^{g-1}-th root of the dual of the theta-determinant L^2 metric.
CurvatureCheck verify_root_curvature(const SiegelPoint& tau, const TangentDirection& X,
                                     const TangentDirection& Y, const FDConfig& cfg = {},
                                     const CurvatureConvention& conv = CurvatureConvention::standard());

/// Curvature of an arbitrary log-metric against coefficient * omega_S.
CurvatureCheck verify_logmetric_curvature(const LogMetricForm& f, cplx coefficient, const SiegelPoint& tau,
                                          const TangentDirection& X, const TangentDirection& Y,
                                          const FDConfig& cfg = {});

enum class C1Mode {
  /// f = 2 pi H(y, y): the Hermitian weight alone.
  WeightOnly,
  /// f = -log |theta(z)|^2 + 2 pi H(y, y): the full log-norm of the Riemann theta section.
  FullSection,
};

struct C1Check {
  CurvatureCheck at_z;
  CurvatureCheck at_shifted;
  /// |fd(z) - fd(z + gamma)|
  double shift_gap = 0.0;
};

/// First Chern form of (L_tau, h) by ddbar in z, compared with omega_tau at z
/// and at z + gamma.
C1Check verify_c1_theta_bundle(const SiegelPoint& tau, const CVector& z, const CVector& V, const CVector& W,
                               const LatticeVector& gamma, const FDConfig& cfg = FDConfig::torus(),
                               C1Mode mode = C1Mode::WeightOnly,
                               const CurvatureConvention& conv = CurvatureConvention::standard());

}  // namespace siegelkit
