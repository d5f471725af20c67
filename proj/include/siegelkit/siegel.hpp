#pragma once

// Siegel upper half space, the Sp(2g) action on it, and the invariant
// Kahler form.
//
// Shared (1,1)-form evaluation convention used throughout the library:
//   alpha(X, Y) = sum_{ab} alpha_{a b-bar} X_a conj(Y_b)
// i.e. X fills the holomorphic slots and conj(Y) the antiholomorphic ones.
// For a real function f this makes (ddbar f)(X, Y) the mixed Wirtinger
// derivative d_s d_{t-bar} f(tau + s X + t Y) at s = t = 0.

#include <complex>

#include <Eigen/Dense>

#include "siegelkit/errors.hpp"

namespace siegelkit {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using RMatrix = Eigen::MatrixXd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;
using IVector = Eigen::VectorXi;

inline constexpr double kSymmetryTolerance = 1e-12;
inline constexpr double kPivotTolerance = 1e-12;

/// A validated point tau of the Siegel upper half space. Immutable; caches
/// Im tau, its inverse and determinant.
class SiegelPoint {
 public:
  int genus() const { return static_cast<int>(tau_.rows()); }
  const CMatrix& tau() const { return tau_; }
  const RMatrix& imag() const { return imag_; }
  const RMatrix& imag_inverse() const { return imag_inverse_; }
  double imag_det() const { return imag_det_; }
  double imag_min_eigenvalue() const { return imag_min_eig_; }

 private:
  friend SiegelPoint validate_siegel(const CMatrix& tau);
  SiegelPoint() = default;

  CMatrix tau_;
  RMatrix imag_;
  RMatrix imag_inverse_;
  double imag_det_ = 0.0;
  double imag_min_eig_ = 0.0;
};

/// Checks tau^t = tau (relative 1e-12) and Im tau > 0 via a symmetric
/// factorization whose pivots must exceed 1e-12 * trace / g. Never
/// symmetrizes its input.
SiegelPoint validate_siegel(const CMatrix& tau);

/// i * Identity_g.
SiegelPoint siegel_identity(int g);

/// Real symplectic 2g x 2g matrix [[A, B], [C, D]].
class SymplecticMatrix {
 public:
  /// Validates M^t J M = J entrywise to 1e-10.
  static SymplecticMatrix from_blocks(RMatrix A, RMatrix B, RMatrix C, RMatrix D);
  static SymplecticMatrix from_full(const RMatrix& M);

  static SymplecticMatrix identity(int g);
  /// [[I, S], [0, I]] for symmetric S.
  static SymplecticMatrix translation(const RMatrix& S);
  /// [[U, 0], [0, U^{-t}]] for invertible U.
  static SymplecticMatrix change_of_basis(const RMatrix& U);
  /// [[0, -I], [I, 0]].
  static SymplecticMatrix inversion(int g);

  int genus() const { return static_cast<int>(A_.rows()); }
  const RMatrix& A() const { return A_; }
  const RMatrix& B() const { return B_; }
  const RMatrix& C() const { return C_; }
  const RMatrix& D() const { return D_; }
  RMatrix full() const;
  double symplectic_residual() const;

  SymplecticMatrix operator*(const SymplecticMatrix& rhs) const;

 private:
  SymplecticMatrix(RMatrix A, RMatrix B, RMatrix C, RMatrix D);
  RMatrix A_, B_, C_, D_;
};

/// Holomorphic tangent vector to the Siegel space: a symmetric complex matrix.
class TangentDirection {
 public:
  explicit TangentDirection(CMatrix X);
  static TangentDirection zero(int g) { return TangentDirection(CMatrix::Zero(g, g)); }
  /// Elementary symmetric direction E_ij + E_ji (E_ii when i == j), 0-based.
  static TangentDirection elementary(int g, int i, int j);

  int genus() const { return static_cast<int>(X_.rows()); }
  const CMatrix& matrix() const { return X_; }

 private:
  CMatrix X_;
};

struct Form11Value {
  cplx value;
};

/// tau -> (A tau + B)(C tau + D)^{-1}. Throws SingularDenominator when
/// C tau + D is numerically singular.
SiegelPoint symplectic_act(const SymplecticMatrix& M, const SiegelPoint& tau);

/// omega_S(X, Y) = (i/2) sum_{ikmj} W_ik W_mj X_km conj(Y_ij), W = (Im tau)^{-1},
/// sums unrestricted over all index pairs.
Form11Value siegel_form(const SiegelPoint& tau, const TangentDirection& X,
                        const TangentDirection& Y);

/// Differential of symplectic_act at tau applied to X, by Richardson-
/// extrapolated central differences along X.
TangentDirection tangent_pushforward(const SymplecticMatrix& M, const SiegelPoint& tau,
                                     const TangentDirection& X);

}  // namespace siegelkit
