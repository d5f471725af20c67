#pragma once

// Riemann theta functions with characteristics, the classical factor of
// automorphy e_gamma(z) = exp(-pi i <n, 2z + tau n>) for gamma = m + tau n,
// and an orthogonal basis of sections of the square of the theta bundle.
//
// Truncation. Write the exponent of a term as
//   -|T (m + a + c)|^2 + pi y^t (Im tau)^{-1} y,  T^t T = pi Im tau,
// with y = Im z and c = (Im tau)^{-1} y. Terms are summed over the whitened
// ball |T (m + a + c)| <= R. The lattice T Z^g has minimal distance at least
// rho = sqrt(lambda_min(pi Im tau)); packing balls of radius rho/2 gives the
// tail bound
//   sum_{|x| > R} exp(-|x|^2)
//     <= g (2/rho)^g sum_k C(g-1,k) (rho/2)^{g-1-k} Gamma((k+1)/2, (R-rho)^2) / 2
// for R >= rho. R is the smallest radius for which this is below epsilon, so
// the absolute truncation error is at most
//   epsilon * exp(pi y^t (Im tau)^{-1} y).

#include <cstddef>
#include <span>
#include <cstdint>
#include <vector>

#include "siegelkit/parallel.hpp"
#include "siegelkit/siegel.hpp"

namespace siegelkit {

struct ThetaCharacteristic {
  RVector a;
  RVector b;

  static ThetaCharacteristic zero(int g) { return {RVector::Zero(g), RVector::Zero(g)}; }
  int genus() const { return static_cast<int>(a.size()); }
};

/// gamma = m + tau n in the period lattice.
struct LatticeVector {
  IVector m;
  IVector n;

  int genus() const { return static_cast<int>(m.size()); }
  CVector point(const SiegelPoint& tau) const;
  LatticeVector operator+(const LatticeVector& o) const { return {m + o.m, n + o.n}; }
};

struct TruncationPolicy {
  double epsilon = 1e-14;
  double max_radius = 40.0;

  /// Throws InvalidPolicy unless 0 < epsilon < 1 and max_radius > 0.
  void validate() const;
};

struct ThetaResult {
  cplx value;
  std::size_t terms = 0;
  double radius = 0.0;
  /// epsilon * exp(pi y^t (Im tau)^{-1} y): bound on |value - exact|.
  double error_bound = 0.0;
};

/// Tail bound (see header comment) for whitened radius R >= rho.
double gaussian_tail_bound(int g, double rho, double radius);

/// Smallest R in [rho, policy.max_radius] with gaussian_tail_bound < epsilon.
/// Throws RadiusCapExceeded if none exists.
double truncation_radius(int g, double rho, const TruncationPolicy& policy);

/// A theta series for a fixed (characteristic, tau, policy): the whitening
/// factorization and truncation radius are computed once.
class ThetaSeries {
 public:
  ThetaSeries(ThetaCharacteristic ch, const SiegelPoint& tau, TruncationPolicy policy = {});

  ThetaResult operator()(const CVector& z) const;

  int genus() const { return tau_.genus(); }
  double radius() const { return radius_; }
  const SiegelPoint& tau() const { return tau_; }

 private:
  // Enumerated lattice points, coordinates flattened g at a time, in
  // (norm, lexicographic) order.
  struct Points {
    std::vector<double> norm2;
    std::vector<int> coords;
    std::vector<std::size_t> order;
  };
  void enumerate(const RVector& shift, Points& out) const;

  // Summation terms for one shift: n = m + a in summation order and the
  // z-independent phase pi n^t tau n. Quadrature grids revisit the same
  // shift many times in a row, so each thread keeps the last few.
  struct Terms {
    std::uint64_t series_id = 0;
    RVector shift;
    std::vector<double> n;
    std::vector<cplx> quad;
  };
  const Terms& terms_for(const RVector& shift) const;

  std::uint64_t id_ = 0;

  ThetaCharacteristic ch_;
  SiegelPoint tau_;
  TruncationPolicy policy_;
  RMatrix chol_upper_;  // U with U^t U = pi Im tau
  double radius_ = 0.0;
};

/// theta[a;b](z, tau) = sum_m exp(pi i <m+a, tau (m+a)> + 2 pi i <m+a, z+b>).
ThetaResult theta_eval(const ThetaCharacteristic& ch, const CVector& z, const SiegelPoint& tau,
                       const TruncationPolicy& policy = {});

/// Evaluates one series at many arguments; the Parallel path distributes
/// arguments over OpenMP threads and returns bitwise the same values.
std::vector<ThetaResult> theta_eval_batch(const ThetaSeries& series, std::span<const CVector> zs,
                                          Execution exec = Execution::Parallel);

/// e_gamma(z) = exp(-pi i <n, 2z + tau n>).
cplx factor_of_automorphy(const LatticeVector& gamma, const CVector& z, const SiegelPoint& tau);

/// Basis {theta_{tau,i}}, i = 1..2^g, of sections of L_tau^2:
///   theta_{tau,i}(z) = 2^{g/2} theta[sigma_i/2; 0](2z, 2tau),
/// sigma_i running over {0,1}^g in lexicographic order. The 2^{g/2} makes the
/// L^2 norms equal (det Im tau)^{-1/2} under the metric h^2 and the unit-mass
/// measure of the polarization.
class SecondOrderBasis {
 public:
  explicit SecondOrderBasis(const SiegelPoint& tau, TruncationPolicy policy = {});

  int size() const { return static_cast<int>(series_.size()); }
  int genus() const { return tau_.genus(); }
  const SiegelPoint& tau() const { return tau_; }

  /// i is 1-based.
  cplx operator()(int i, const CVector& z) const;
  /// All 2^g values at z into out (size 2^g).
  void evaluate_all(const CVector& z, std::span<cplx> out) const;

  /// sigma_i for 1-based i.
  static IVector sigma(int g, int i);
  static double normalization(int g);

 private:
  SiegelPoint tau_;
  std::vector<ThetaSeries> series_;
};

/// Single evaluation of theta_{tau,i}(z); i is 1-based.
cplx second_order_basis(int i, const CVector& z, const SiegelPoint& tau,
                        const TruncationPolicy& policy = {});

}  // namespace siegelkit
