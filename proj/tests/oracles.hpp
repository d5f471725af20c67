#pragma once

// Independent reference computations for the tests. Deliberately naive:
// box lattice sums, explicit index loops, closed-form derivatives.

#include <cmath>
#include <functional>
#include <numbers>

#include "siegelkit/siegel.hpp"
#include "siegelkit/theta.hpp"

namespace oracle {

using siegelkit::cplx;
using siegelkit::CMatrix;
using siegelkit::CVector;
using siegelkit::RVector;

inline constexpr double kPi = std::numbers::pi;

// Visit every integer vector in the box [-bound, bound]^g.
inline void for_each_in_box(int g, int bound, const std::function<void(const Eigen::VectorXi&)>& visit) {
  Eigen::VectorXi m = Eigen::VectorXi::Constant(g, -bound);
  while (true) {
    visit(m);
    int k = 0;
    while (k < g && m(k) == bound) m(k++) = -bound;
    if (k == g) return;
    ++m(k);
  }
}

// theta[a;b](z, tau) as a plain box sum.
inline cplx theta_box(const RVector& a, const RVector& b, const CVector& z, const CMatrix& tau, int bound) {
  const int g = static_cast<int>(tau.rows());
  cplx sum = 0.0;
  for_each_in_box(g, bound, [&](const Eigen::VectorXi& m) {
    cplx expo = 0.0;
    for (int i = 0; i < g; ++i) {
      const double ni = m(i) + a(i);
      for (int j = 0; j < g; ++j) expo += ni * tau(i, j) * (m(j) + a(j));
      expo += 2.0 * ni * (z(i) + b(i));
    }
    sum += std::exp(cplx(0.0, kPi) * expo);
  });
  return sum;
}

inline cplx theta_box(const CVector& z, const CMatrix& tau, int bound) {
  const auto g = tau.rows();
  return theta_box(RVector::Zero(g), RVector::Zero(g), z, tau, bound);
}

// omega_S(X, Y) by the explicit quadruple sum.
inline cplx siegel_form_loops(const CMatrix& tau, const CMatrix& X, const CMatrix& Y) {
  const int g = static_cast<int>(tau.rows());
  const Eigen::MatrixXd W = tau.imag().inverse();
  cplx s = 0.0;
  for (int i = 0; i < g; ++i)
    for (int k = 0; k < g; ++k)
      for (int m = 0; m < g; ++m)
        for (int j = 0; j < g; ++j) s += W(i, k) * W(m, j) * X(k, m) * std::conj(Y(i, j));
  return cplx(0.0, 0.5) * s;
}

// Differential of tau -> (A tau + B)(C tau + D)^{-1}: (C tau + D)^{-t} X (C tau + D)^{-1}.
inline CMatrix pushforward_closed_form(const siegelkit::SymplecticMatrix& M, const CMatrix& tau, const CMatrix& X) {
  const CMatrix den = M.C().cast<cplx>() * tau + M.D().cast<cplx>();
  const CMatrix inv = den.inverse();
  return inv.transpose() * X * inv;
}

inline double max_abs(const CMatrix& A) { return A.cwiseAbs().maxCoeff(); }

}  // namespace oracle
