#pragma once

// Volumes of invariant forms, analytic torsion of flat polarized tori in
// closed form, Quillen factors, and log-metric bookkeeping for duals and
// roots of line bundle metrics over the Siegel space.

#include <functional>

#include "siegelkit/siegel.hpp"

namespace siegelkit {

/// rho(c1(L, h)) and rho(omega) for a polarized abelian variety of dimension g.
struct PolarizationData {
  int g = 1;
  double rho_c1 = 1.0;
  double rho_omega = 1.0;

  /// Throws InvalidPolarization unless g >= 1 and both volumes are positive and finite.
  void validate() const;
};

struct TorsionResult {
  double torsion = 0.0;
  /// exp(torsion), the ratio of the Quillen metric to the L^2 metric.
  double quillen_factor = 1.0;
};

/// rho(alpha) = (1/g!) int_A alpha^g for the translation-invariant form
/// alpha = (i/2) sum_ij M_ij dz_i ^ dz-bar_j on A_tau. Equals
/// det(M) / det((Im tau)^{-1}), so rho(omega_tau) = 1.
double rho_invariant_form(const SiegelPoint& tau, const CMatrix& coefficients);

/// T = -(1/2) rho(c1) log(rho(c1) / ((2 pi)^g rho(omega))).
TorsionResult bost_torsion(const PolarizationData& p);

/// (2 pi)^{g/2}: the Quillen factor of (A_tau, omega_tau, L_tau, h).
double quillen_factor_principal(int g);

/// The same closed form applied to L_tau^2 with c1 = 2 omega:
/// T = 2^{g-1} g log(pi). Independent of tau, like the principal value.
TorsionResult theta_square_torsion(int g);

/// Reduced rational tensor power.
struct TensorPower {
  long num = 1;
  long den = 1;

  static TensorPower make(long num, long den);
  bool operator==(const TensorPower&) const = default;
};

/// f(tau) = -log ||sigma||^2(tau) for a holomorphic frame sigma of a line
/// bundle over the Siegel space. Curvature is R = ddbar f.
struct LogMetricForm {
  std::function<double(const SiegelPoint&)> f;
  TensorPower power;
  bool dual = false;

  double operator()(const SiegelPoint& tau) const { return f(tau); }
};

/// Dual metric followed by the k-th root: f' = -f / k, dual flag toggled,
/// power -> -power / k. Curvature becomes -R / k.
LogMetricForm root_dual_logmetric(const LogMetricForm& f, int k);

/// -log(2^g det Im tau): L^2 metric of dz_1 ^ ... ^ dz_g on the Hodge bundle
/// determinant.
LogMetricForm hodge_logmetric(int g);

/// -log((det Im tau)^{2^{g-1}}): L^2 metric of v* on the determinant of
/// cohomology of the squared theta bundle, dual to v = theta_{tau,1} ^ ... ^ theta_{tau,2^g}.
LogMetricForm theta_det_logmetric(int g);

/// Same frame with the Quillen metric, which differs from the L^2 metric by
/// the tau-independent factor exp(T).
LogMetricForm theta_det_quillen_logmetric(int g, double torsion);

}  // namespace siegelkit
