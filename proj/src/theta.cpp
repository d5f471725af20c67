#include "siegelkit/theta.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>

#include <boost/math/special_functions/binomial.hpp>
#include <boost/math/special_functions/gamma.hpp>

namespace siegelkit {

namespace {

constexpr double kPi = std::numbers::pi;
// exp() of the envelope exponent must stay representable.
constexpr double kMaxLogEnvelope = 690.0;

void require_genus(int expected, Eigen::Index actual, const char* what) {
  if (actual != expected)
    throw Error(ErrorCode::DimensionMismatch, std::string(what) + " has wrong dimension");
}

}  // namespace

CVector LatticeVector::point(const SiegelPoint& tau) const {
  return m.cast<double>().cast<cplx>() + tau.tau() * n.cast<double>().cast<cplx>();
}

void TruncationPolicy::validate() const {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw Error(ErrorCode::InvalidPolicy, "epsilon must lie in (0, 1)");
  if (!(max_radius > 0.0 && std::isfinite(max_radius)))
    throw Error(ErrorCode::InvalidPolicy, "max_radius must be positive and finite");
}

double gaussian_tail_bound(int g, double rho, double radius) {
  if (radius < rho) return std::numeric_limits<double>::infinity();
  const double lower = (radius - rho) * (radius - rho);
  double integral = 0.0;
  for (int k = 0; k < g; ++k) {
    const double binom = boost::math::binomial_coefficient<double>(static_cast<unsigned>(g - 1),
                                                                   static_cast<unsigned>(k));
    integral += binom * std::pow(0.5 * rho, g - 1 - k) * 0.5 * boost::math::tgamma(0.5 * (k + 1), lower);
  }
  return g * std::pow(2.0 / rho, g) * integral;
}

double truncation_radius(int g, double rho, const TruncationPolicy& policy) {
  policy.validate();
  if (!(rho > 0.0)) throw Error(ErrorCode::RadiusCapExceeded, "degenerate lattice");
  double lo = rho;
  double hi = policy.max_radius;
  if (gaussian_tail_bound(g, rho, lo) < policy.epsilon) return lo;
  if (hi <= lo || !(gaussian_tail_bound(g, rho, hi) < policy.epsilon))
    throw Error(ErrorCode::RadiusCapExceeded, "tail bound not reached within max_radius");
  while (hi - lo > 1e-9 * hi) {
    const double mid = 0.5 * (lo + hi);
    if (gaussian_tail_bound(g, rho, mid) < policy.epsilon)
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

// ---------------------------------------------------------------------------

ThetaSeries::ThetaSeries(ThetaCharacteristic ch, const SiegelPoint& tau, TruncationPolicy policy)
    : ch_(std::move(ch)), tau_(tau), policy_(policy) {
  policy_.validate();
  static std::atomic<std::uint64_t> counter{0};
  id_ = ++counter;
  const int g = tau_.genus();
  require_genus(g, ch_.a.size(), "characteristic a");
  require_genus(g, ch_.b.size(), "characteristic b");
  if (!ch_.a.allFinite() || !ch_.b.allFinite())
    throw Error(ErrorCode::InvalidArgument, "characteristic has non-finite entries");

  const RMatrix Q = kPi * tau_.imag();
  Eigen::LLT<RMatrix> llt(Q);
  chol_upper_ = llt.matrixU();
  const double rho = std::sqrt(kPi * tau_.imag_min_eigenvalue());
  radius_ = truncation_radius(g, rho, policy_);
}

// Fincke-Pohst style enumeration of integer m with |U (m + shift)| <= R,
// bounding coordinates from the last one down.
void ThetaSeries::enumerate(const RVector& shift, Points& out) const {
  const int g = genus();
  const RMatrix& U = chol_upper_;
  const double R2 = radius_ * radius_;
  out.norm2.clear();
  out.coords.clear();
  std::vector<int> m(g);

  auto recurse = [&](auto&& self, int i, double partial) -> void {
    // centre_i: offset from coordinates j > i already fixed
    double centre = shift(i);
    for (int j = i + 1; j < g; ++j) centre += U(i, j) * (m[j] + shift(j)) / U(i, i);
    const double room = R2 - partial;
    if (room < 0.0) return;
    const double half_width = std::sqrt(room) / U(i, i);
    const auto lo = static_cast<int>(std::ceil(-centre - half_width));
    const auto hi = static_cast<int>(std::floor(-centre + half_width));
    for (int k = lo; k <= hi; ++k) {
      m[i] = k;
      const double t = U(i, i) * (k + centre);
      const double next = partial + t * t;
      if (next > R2) continue;
      if (i == 0) {
        out.norm2.push_back(next);
        out.coords.insert(out.coords.end(), m.begin(), m.end());
      } else {
        self(self, i - 1, next);
      }
    }
  };
  recurse(recurse, g - 1, 0.0);

  const std::size_t count = out.norm2.size();
  out.order.resize(count);
  std::iota(out.order.begin(), out.order.end(), std::size_t{0});
  const int* c = out.coords.data();
  std::sort(out.order.begin(), out.order.end(), [&](std::size_t p, std::size_t q) {
    if (out.norm2[p] != out.norm2[q]) return out.norm2[p] < out.norm2[q];
    return std::lexicographical_compare(c + p * g, c + (p + 1) * g, c + q * g, c + (q + 1) * g);
  });
}

const ThetaSeries::Terms& ThetaSeries::terms_for(const RVector& shift) const {
  constexpr std::size_t kSlots = 8;
  thread_local std::array<Terms, kSlots> cache;
  thread_local std::size_t next_slot = 0;
  for (const Terms& t : cache)
    if (t.series_id == id_ && t.shift.size() == shift.size() && t.shift == shift) return t;

  thread_local Points points;
  enumerate(shift, points);
  const int g = genus();
  const CMatrix& tau = tau_.tau();
  Terms& t = cache[next_slot];
  next_slot = (next_slot + 1) % kSlots;
  t.series_id = id_;
  t.shift = shift;
  t.n.resize(points.order.size() * g);
  t.quad.resize(points.order.size());
  for (std::size_t k = 0; k < points.order.size(); ++k) {
    const int* m = points.coords.data() + points.order[k] * g;
    double* n = t.n.data() + k * g;
    for (int i = 0; i < g; ++i) n[i] = m[i] + ch_.a(i);
    cplx quad = 0.0;
    for (int j = 0; j < g; ++j) {
      cplx row = 0.0;
      for (int i = 0; i < g; ++i) row += tau(i, j) * n[i];
      quad += row * n[j];
    }
    t.quad[k] = cplx(0.0, kPi) * quad;
  }
  return t;
}

ThetaResult ThetaSeries::operator()(const CVector& z) const {
  const int g = genus();
  require_genus(g, z.size(), "z");
  if (!z.allFinite()) throw Error(ErrorCode::InvalidArgument, "z has non-finite entries");

  const RVector y = z.imag();
  const RVector c = tau_.imag_inverse() * y;
  const double log_env = kPi * y.dot(c);
  if (log_env > kMaxLogEnvelope)
    throw Error(ErrorCode::RadiusCapExceeded, "Im z too large for the theta envelope");

  const Terms& t = terms_for(ch_.a + c);
  const CVector zb = cplx(0.0, 2.0 * kPi) * (z + ch_.b.cast<cplx>());
  CompensatedSum sum;
  for (std::size_t k = 0; k < t.quad.size(); ++k) {
    const double* n = t.n.data() + k * g;
    cplx lin = 0.0;
    for (int j = 0; j < g; ++j) lin += zb(j) * n[j];
    sum.add(std::exp(t.quad[k] + lin));
  }
  return {sum.value(), t.quad.size(), radius_, policy_.epsilon * std::exp(log_env)};
}

ThetaResult theta_eval(const ThetaCharacteristic& ch, const CVector& z, const SiegelPoint& tau,
                       const TruncationPolicy& policy) {
  return ThetaSeries(ch, tau, policy)(z);
}

std::vector<ThetaResult> theta_eval_batch(const ThetaSeries& series, std::span<const CVector> zs,
                                          Execution exec) {
  std::vector<ThetaResult> out(zs.size());
  const auto count = static_cast<std::ptrdiff_t>(zs.size());
  if (exec == Execution::Serial) {
    for (std::ptrdiff_t k = 0; k < count; ++k) out[k] = series(zs[k]);
    return out;
  }
  // Exceptions must not escape an OpenMP region; capture the first one.
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 16)
  for (std::ptrdiff_t k = 0; k < count; ++k) {
    try {
      out[k] = series(zs[k]);
    } catch (...) {
#pragma omp critical(siegelkit_theta_batch)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

cplx factor_of_automorphy(const LatticeVector& gamma, const CVector& z, const SiegelPoint& tau) {
  const int g = tau.genus();
  require_genus(g, gamma.m.size(), "lattice vector m");
  require_genus(g, gamma.n.size(), "lattice vector n");
  require_genus(g, z.size(), "z");
  const CVector n = gamma.n.cast<double>().cast<cplx>();
  const cplx inner = n.dot(2.0 * z + tau.tau() * n);
  return std::exp(cplx(0.0, -kPi) * inner);
}

// ---------------------------------------------------------------------------

IVector SecondOrderBasis::sigma(int g, int i) {
  if (g < 1 || g > 30 || i < 1 || i > (1 << g))
    throw Error(ErrorCode::IndexOutOfRange, "basis index must lie in 1..2^g");
  IVector s(g);
  const int bits = i - 1;
  for (int k = 0; k < g; ++k) s(k) = (bits >> (g - 1 - k)) & 1;
  return s;
}

double SecondOrderBasis::normalization(int g) { return std::pow(2.0, 0.5 * g); }

SecondOrderBasis::SecondOrderBasis(const SiegelPoint& tau, TruncationPolicy policy) : tau_(tau) {
  const int g = tau.genus();
  const SiegelPoint tau2 = validate_siegel(2.0 * tau.tau());
  const int count = 1 << g;
  series_.reserve(count);
  for (int i = 1; i <= count; ++i) {
    ThetaCharacteristic ch{0.5 * sigma(g, i).cast<double>(), RVector::Zero(g)};
    series_.emplace_back(std::move(ch), tau2, policy);
  }
}

cplx SecondOrderBasis::operator()(int i, const CVector& z) const {
  if (i < 1 || i > size()) throw Error(ErrorCode::IndexOutOfRange, "basis index must lie in 1..2^g");
  return normalization(genus()) * series_[i - 1](2.0 * z).value;
}

void SecondOrderBasis::evaluate_all(const CVector& z, std::span<cplx> out) const {
  if (static_cast<int>(out.size()) != size())
    throw Error(ErrorCode::DimensionMismatch, "output span must hold 2^g values");
  const double c = normalization(genus());
  const CVector z2 = 2.0 * z;
  for (int i = 0; i < size(); ++i) out[i] = c * series_[i](z2).value;
}

cplx second_order_basis(int i, const CVector& z, const SiegelPoint& tau, const TruncationPolicy& policy) {
  const int g = tau.genus();
  const IVector s = SecondOrderBasis::sigma(g, i);
  const SiegelPoint tau2 = validate_siegel(2.0 * tau.tau());
  ThetaCharacteristic ch{0.5 * s.cast<double>(), RVector::Zero(g)};
  return SecondOrderBasis::normalization(g) * theta_eval(ch, 2.0 * z, tau2, policy).value;
}

}  // namespace siegelkit
