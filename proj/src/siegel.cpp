#include "siegelkit/siegel.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace siegelkit {

namespace {

double max_abs(const CMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

void require_square(const CMatrix& m, const char* what) {
  if (m.rows() != m.cols() || m.rows() == 0)
    throw Error(ErrorCode::DimensionMismatch, std::string(what) + " must be a non-empty square matrix");
}

bool is_symmetric(const CMatrix& m) {
  const double scale = max_abs(m);
  const double asym = max_abs(m - m.transpose());
  return asym <= kSymmetryTolerance * scale;
}

// Returns false if any Cholesky pivot of the symmetric matrix Y falls below
// kPivotTolerance * trace / g.
bool cholesky_pivots_positive(const RMatrix& Y) {
  const Eigen::Index g = Y.rows();
  const double trace = Y.trace();
  if (!(trace > 0.0)) return false;
  const double threshold = kPivotTolerance * trace / static_cast<double>(g);
  RMatrix L = RMatrix::Zero(g, g);
  for (Eigen::Index k = 0; k < g; ++k) {
    double pivot = Y(k, k);
    for (Eigen::Index j = 0; j < k; ++j) pivot -= L(k, j) * L(k, j);
    if (!(pivot > threshold)) return false;
    L(k, k) = std::sqrt(pivot);
    for (Eigen::Index i = k + 1; i < g; ++i) {
      double s = Y(i, k);
      for (Eigen::Index j = 0; j < k; ++j) s -= L(i, j) * L(k, j);
      L(i, k) = s / L(k, k);
    }
  }
  return true;
}

RMatrix symplectic_form(int g) {
  RMatrix J = RMatrix::Zero(2 * g, 2 * g);
  J.topRightCorner(g, g) = RMatrix::Identity(g, g);
  J.bottomLeftCorner(g, g) = -RMatrix::Identity(g, g);
  return J;
}

}  // namespace

SiegelPoint validate_siegel(const CMatrix& tau) {
  require_square(tau, "tau");
  if (!tau.allFinite()) throw Error(ErrorCode::InvalidArgument, "tau has non-finite entries");
  if (!is_symmetric(tau)) throw Error(ErrorCode::NotSymmetric, "tau is not symmetric");

  RMatrix Y = tau.imag();
  // tau passed the relative symmetry test; Y is symmetrized only for the
  // factorization, the stored tau is untouched.
  RMatrix Ysym = 0.5 * (Y + Y.transpose());
  if (!cholesky_pivots_positive(Ysym))
    throw Error(ErrorCode::ImaginaryPartNotPositiveDefinite, "Im tau is not positive definite");

  SiegelPoint p;
  p.tau_ = tau;
  p.imag_ = Ysym;
  Eigen::LLT<RMatrix> llt(Ysym);
  p.imag_inverse_ = llt.solve(RMatrix::Identity(Ysym.rows(), Ysym.cols()));
  p.imag_inverse_ = 0.5 * (p.imag_inverse_ + p.imag_inverse_.transpose()).eval();
  const RMatrix L = llt.matrixL();
  double det = 1.0;
  for (Eigen::Index i = 0; i < L.rows(); ++i) det *= L(i, i) * L(i, i);
  p.imag_det_ = det;
  Eigen::SelfAdjointEigenSolver<RMatrix> eig(Ysym, Eigen::EigenvaluesOnly);
  p.imag_min_eig_ = eig.eigenvalues().minCoeff();
  return p;
}

SiegelPoint siegel_identity(int g) {
  return validate_siegel(cplx(0.0, 1.0) * CMatrix::Identity(g, g));
}

// ---------------------------------------------------------------------------

SymplecticMatrix::SymplecticMatrix(RMatrix A, RMatrix B, RMatrix C, RMatrix D)
    : A_(std::move(A)), B_(std::move(B)), C_(std::move(C)), D_(std::move(D)) {}

SymplecticMatrix SymplecticMatrix::from_blocks(RMatrix A, RMatrix B, RMatrix C, RMatrix D) {
  const auto g = A.rows();
  auto square_g = [g](const RMatrix& m) { return m.rows() == g && m.cols() == g; };
  if (g == 0 || !square_g(A) || !square_g(B) || !square_g(C) || !square_g(D))
    throw Error(ErrorCode::DimensionMismatch, "symplectic blocks must all be g x g");
  SymplecticMatrix M(std::move(A), std::move(B), std::move(C), std::move(D));
  if (!(M.symplectic_residual() <= 1e-10))
    throw Error(ErrorCode::NotSymplectic, "M^t J M differs from J");
  return M;
}

SymplecticMatrix SymplecticMatrix::from_full(const RMatrix& M) {
  if (M.rows() != M.cols() || M.rows() % 2 != 0 || M.rows() == 0)
    throw Error(ErrorCode::DimensionMismatch, "symplectic matrix must be 2g x 2g");
  const auto g = M.rows() / 2;
  return from_blocks(M.topLeftCorner(g, g), M.topRightCorner(g, g), M.bottomLeftCorner(g, g),
                     M.bottomRightCorner(g, g));
}

SymplecticMatrix SymplecticMatrix::identity(int g) {
  return SymplecticMatrix(RMatrix::Identity(g, g), RMatrix::Zero(g, g), RMatrix::Zero(g, g),
                          RMatrix::Identity(g, g));
}

SymplecticMatrix SymplecticMatrix::translation(const RMatrix& S) {
  const auto g = S.rows();
  return from_blocks(RMatrix::Identity(g, g), S, RMatrix::Zero(g, g), RMatrix::Identity(g, g));
}

SymplecticMatrix SymplecticMatrix::change_of_basis(const RMatrix& U) {
  const auto g = U.rows();
  Eigen::FullPivLU<RMatrix> lu(U);
  if (U.cols() != g || !lu.isInvertible())
    throw Error(ErrorCode::NotSymplectic, "change of basis must be invertible");
  RMatrix Uinv_t = lu.inverse().transpose();
  return from_blocks(U, RMatrix::Zero(g, g), RMatrix::Zero(g, g), Uinv_t);
}

SymplecticMatrix SymplecticMatrix::inversion(int g) {
  return SymplecticMatrix(RMatrix::Zero(g, g), -RMatrix::Identity(g, g), RMatrix::Identity(g, g),
                          RMatrix::Zero(g, g));
}

RMatrix SymplecticMatrix::full() const {
  const auto g = A_.rows();
  RMatrix M(2 * g, 2 * g);
  M << A_, B_, C_, D_;
  return M;
}

double SymplecticMatrix::symplectic_residual() const {
  const RMatrix M = full();
  const RMatrix J = symplectic_form(genus());
  return (M.transpose() * J * M - J).cwiseAbs().maxCoeff();
}

SymplecticMatrix SymplecticMatrix::operator*(const SymplecticMatrix& rhs) const {
  if (rhs.genus() != genus()) throw Error(ErrorCode::DimensionMismatch, "genus mismatch in product");
  const RMatrix P = full() * rhs.full();
  const auto g = A_.rows();
  return SymplecticMatrix(P.topLeftCorner(g, g), P.topRightCorner(g, g), P.bottomLeftCorner(g, g),
                          P.bottomRightCorner(g, g));
}

// ---------------------------------------------------------------------------

TangentDirection::TangentDirection(CMatrix X) : X_(std::move(X)) {
  require_square(X_, "tangent direction");
  if (!X_.allFinite()) throw Error(ErrorCode::InvalidArgument, "tangent direction has non-finite entries");
  if (!is_symmetric(X_)) throw Error(ErrorCode::NotSymmetric, "tangent direction is not symmetric");
}

TangentDirection TangentDirection::elementary(int g, int i, int j) {
  if (i < 0 || j < 0 || i >= g || j >= g) throw Error(ErrorCode::IndexOutOfRange, "elementary index");
  CMatrix E = CMatrix::Zero(g, g);
  E(i, j) = 1.0;
  E(j, i) = 1.0;
  return TangentDirection(E);
}

SiegelPoint symplectic_act(const SymplecticMatrix& M, const SiegelPoint& tau) {
  if (M.genus() != tau.genus()) throw Error(ErrorCode::DimensionMismatch, "genus of M and tau differ");
  const CMatrix num = M.A().cast<cplx>() * tau.tau() + M.B().cast<cplx>();
  const CMatrix den = M.C().cast<cplx>() * tau.tau() + M.D().cast<cplx>();
  // result * den = num  <=>  den^t * result^t = num^t
  Eigen::FullPivLU<CMatrix> lu(den.transpose());
  if (!lu.isInvertible() || lu.rcond() < 1e-13)
    throw Error(ErrorCode::SingularDenominator, "C tau + D is singular");
  CMatrix result = lu.solve(num.transpose()).transpose();
  const double scale = max_abs(result);
  if (max_abs(result - result.transpose()) > 1e-8 * std::max(scale, 1.0))
    throw Error(ErrorCode::SingularDenominator, "image of tau is not symmetric; M is corrupted");
  result = (0.5 * (result + result.transpose())).eval();
  return validate_siegel(result);
}

Form11Value siegel_form(const SiegelPoint& tau, const TangentDirection& X, const TangentDirection& Y) {
  if (X.genus() != tau.genus() || Y.genus() != tau.genus())
    throw Error(ErrorCode::DimensionMismatch, "siegel_form arguments differ in genus");
  const CMatrix W = tau.imag_inverse().cast<cplx>();
  // sum_{ikmj} W_ik X_km W_mj conj(Y_ij) = sum_ij (W X W)_ij conj(Y_ij)
  const CMatrix WXW = W * X.matrix() * W;
  const cplx s = WXW.cwiseProduct(Y.matrix().conjugate()).sum();
  return {cplx(0.0, 0.5) * s};
}

TangentDirection tangent_pushforward(const SymplecticMatrix& M, const SiegelPoint& tau,
                                     const TangentDirection& X) {
  if (M.genus() != tau.genus() || X.genus() != tau.genus())
    throw Error(ErrorCode::DimensionMismatch, "pushforward arguments differ in genus");
  const double xnorm = X.matrix().cwiseAbs().maxCoeff();
  const int g = tau.genus();
  if (xnorm == 0.0) return TangentDirection::zero(g);

  // Keep tau +- hX well inside the domain: |h X| <= 1e-3 * lambda_min(Im tau).
  const double h = 1e-3 * tau.imag_min_eigenvalue() / xnorm;
  auto central = [&](double step) -> CMatrix {
    const SiegelPoint plus = symplectic_act(M, validate_siegel(tau.tau() + step * X.matrix()));
    const SiegelPoint minus = symplectic_act(M, validate_siegel(tau.tau() - step * X.matrix()));
    return (plus.tau() - minus.tau()) / (2.0 * step);
  };
  const CMatrix d1 = central(h);
  const CMatrix d2 = central(0.5 * h);
  CMatrix d = (4.0 * d2 - d1) / 3.0;
  const double scale = max_abs(d);
  if (max_abs(d - d.transpose()) > 1e-8 * std::max(scale, 1e-300))
    throw Error(ErrorCode::SingularDenominator, "pushforward lost symmetry");
  return TangentDirection((0.5 * (d + d.transpose())).eval());
}

}  // namespace siegelkit
