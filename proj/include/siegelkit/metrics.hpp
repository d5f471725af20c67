#pragma once

// Hermitian metrics on the theta bundle and L^2 products of its sections.
//
// Integration over A_tau uses z = u + tau v with (u, v) uniform on
// [0,1)^{2g}. The polarization volume form omega^g/g! is translation
// invariant with total mass 1, so the trapezoidal rule on this grid is the
// plain mean over nodes, and converges spectrally for the smooth periodic
// integrands that appear here.

#include <functional>
#include <memory>

#include "siegelkit/parallel.hpp"
#include "siegelkit/siegel.hpp"
#include "siegelkit/theta.hpp"

namespace siegelkit {

/// H(z, w) = sum_ij (Im tau)^{-1}_ij conj(z_i) w_j, conjugate-linear in z.
class HermitianPairing {
 public:
  explicit HermitianPairing(const SiegelPoint& tau) : W_(tau.imag_inverse()) {}

  cplx operator()(const CVector& z, const CVector& w) const;
  /// H(y, y) for y = Im z.
  double imag_quadratic(const CVector& z) const;

 private:
  RMatrix W_;
};

/// A holomorphic section of L_tau^k in the classical trivialization.
struct SectionEvaluator {
  std::function<cplx(const CVector&)> eval;
  int weight_power = 0;
};

SectionEvaluator constant_section(cplx value);
/// The Riemann theta function, a section of L_tau.
SectionEvaluator riemann_theta_section(const SiegelPoint& tau, const TruncationPolicy& policy = {});
/// theta_{tau,i} (1-based), a section of L_tau^2.
SectionEvaluator second_order_section(std::shared_ptr<const SecondOrderBasis> basis, int i);

/// |s(z)| exp(-k pi H(y, y)). Throws WeightMismatch for k < 0.
double pointwise_norm(const SectionEvaluator& s, const CVector& z, const SiegelPoint& tau);

class QuadratureGrid {
 public:
  QuadratureGrid(int g, int n_per_dim);

  int genus() const { return g_; }
  int n_per_dim() const { return n_; }
  std::size_t size() const { return size_; }
  double weight() const { return 1.0 / static_cast<double>(size_); }
  /// z = u + tau v for node `index`; u digits vary fastest.
  CVector point(const SiegelPoint& tau, std::size_t index) const;

 private:
  int g_;
  int n_;
  std::size_t size_;
};

/// Default nodes per dimension: 64 for g = 1, 24 for g = 2.
int default_quadrature_n(int g);

/// Mean over grid nodes of s1 conj(s2) exp(-2 k pi H(y, y)); conjugate-linear
/// in s2.
cplx l2_inner(const SectionEvaluator& s1, const SectionEvaluator& s2, const SiegelPoint& tau,
              const QuadratureGrid& grid, Execution exec = Execution::Parallel);

/// Gram matrix G_ij = <theta_{tau,i}, theta_{tau,j}>, g <= 2. The Parallel
/// path reduces fixed-size chunks in a fixed tree, so its result is bitwise
/// independent of the thread count.
CMatrix gram_matrix(const SiegelPoint& tau, const QuadratureGrid& grid,
                    Execution exec = Execution::Parallel, const TruncationPolicy& policy = {});

/// Straightforward serial Gram matrix through second_order_basis(); kept as
/// the reference the kernel is tested against.
CMatrix gram_matrix_reference(const SiegelPoint& tau, const QuadratureGrid& grid,
                              const TruncationPolicy& policy = {});

/// Pointwise pairing on holomorphic one-forms induced by the flat Kahler
/// metric: <alpha, beta> = 2 sum_ij (Im tau)_ij alpha_i conj(beta_j).
cplx cotangent_inner(const SiegelPoint& tau, const CVector& alpha, const CVector& beta);

/// Squared L^2 norm of dz_1 ^ ... ^ dz_g: 2^g det Im tau.
double det_hodge_norm(const SiegelPoint& tau);

}  // namespace siegelkit
