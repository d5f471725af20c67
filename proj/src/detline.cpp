#include "siegelkit/detline.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

namespace siegelkit {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

void PolarizationData::validate() const {
  if (g < 1) throw Error(ErrorCode::InvalidPolarization, "g must be positive");
  if (!(rho_c1 > 0.0 && std::isfinite(rho_c1)) || !(rho_omega > 0.0 && std::isfinite(rho_omega)))
    throw Error(ErrorCode::InvalidPolarization, "volumes must be positive and finite");
}

double rho_invariant_form(const SiegelPoint& tau, const CMatrix& coefficients) {
  const int g = tau.genus();
  if (coefficients.rows() != g || coefficients.cols() != g)
    throw Error(ErrorCode::DimensionMismatch, "coefficient matrix must be g x g");
  const double scale = coefficients.cwiseAbs().maxCoeff();
  const double skew = (coefficients - coefficients.adjoint()).cwiseAbs().maxCoeff();
  if (skew > 1e-12 * scale) throw Error(ErrorCode::NonHermitianCoefficients, "alpha is not a real (1,1)-form");
  // alpha^g / g! = det(M) (i/2)^g dz_1 ^ dz-bar_1 ^ ... ; the Euclidean volume
  // of C^g / (Z^g + tau Z^g) is det Im tau.
  return coefficients.determinant().real() * tau.imag_det();
}

TorsionResult bost_torsion(const PolarizationData& p) {
  p.validate();
  const double ratio = p.rho_c1 / (std::pow(kTwoPi, p.g) * p.rho_omega);
  const double T = -0.5 * p.rho_c1 * std::log(ratio);
  return {T, std::exp(T)};
}

double quillen_factor_principal(int g) {
  if (g < 1) throw Error(ErrorCode::InvalidPolarization, "g must be positive");
  return std::pow(kTwoPi, 0.5 * g);
}

TorsionResult theta_square_torsion(int g) {
  if (g < 1) throw Error(ErrorCode::InvalidPolarization, "g must be positive");
  // rho(2 omega) = 2^g rho(omega) = 2^g
  return bost_torsion({g, std::pow(2.0, g), 1.0});
}

TensorPower TensorPower::make(long num, long den) {
  if (den == 0) throw Error(ErrorCode::InvalidArgument, "tensor power with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const long d = std::gcd(num, den);
  return {num / d, den / d};
}

LogMetricForm root_dual_logmetric(const LogMetricForm& f, int k) {
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "root order must be positive");
  auto inner = f.f;
  const double scale = -1.0 / k;
  return {[inner, scale](const SiegelPoint& tau) { return scale * inner(tau); },
          TensorPower::make(-f.power.num, f.power.den * k), !f.dual};
}

// Powers are recorded relative to the Hodge line bundle, the dual of det of
// the Hodge bundle; the squared theta bundle's determinant of cohomology is
// its -2^{g-1}-th power.
LogMetricForm hodge_logmetric(int g) {
  const double log2g = g * std::log(2.0);
  return {[log2g](const SiegelPoint& tau) { return -(log2g + std::log(tau.imag_det())); },
          TensorPower::make(-1, 1), false};
}

LogMetricForm theta_det_logmetric(int g) {
  const double exponent = std::ldexp(1.0, g - 1);
  return {[exponent](const SiegelPoint& tau) { return -exponent * std::log(tau.imag_det()); },
          TensorPower::make(-(1L << (g - 1)), 1), false};
}

LogMetricForm theta_det_quillen_logmetric(int g, double torsion) {
  LogMetricForm l2 = theta_det_logmetric(g);
  auto inner = l2.f;
  l2.f = [inner, torsion](const SiegelPoint& tau) { return inner(tau) - torsion; };
  return l2;
}

}  // namespace siegelkit
