#include "siegelkit/metrics.hpp"

#include <cmath>
#include <exception>
#include <numbers>
#include <vector>

namespace siegelkit {

namespace {

constexpr double kPi = std::numbers::pi;

void require_dim(int g, Eigen::Index n, const char* what) {
  if (n != g) throw Error(ErrorCode::DimensionMismatch, std::string(what) + " has wrong dimension");
}

}  // namespace

cplx HermitianPairing::operator()(const CVector& z, const CVector& w) const {
  require_dim(static_cast<int>(W_.rows()), z.size(), "z");
  require_dim(static_cast<int>(W_.rows()), w.size(), "w");
  return z.dot(W_.cast<cplx>() * w);  // dot conjugates z
}

double HermitianPairing::imag_quadratic(const CVector& z) const {
  require_dim(static_cast<int>(W_.rows()), z.size(), "z");
  const RVector y = z.imag();
  return y.dot(W_ * y);
}

SectionEvaluator constant_section(cplx value) {
  return {[value](const CVector&) { return value; }, 0};
}

SectionEvaluator riemann_theta_section(const SiegelPoint& tau, const TruncationPolicy& policy) {
  auto series = std::make_shared<const ThetaSeries>(ThetaCharacteristic::zero(tau.genus()), tau, policy);
  return {[series](const CVector& z) { return (*series)(z).value; }, 1};
}

SectionEvaluator second_order_section(std::shared_ptr<const SecondOrderBasis> basis, int i) {
  if (i < 1 || i > basis->size()) throw Error(ErrorCode::IndexOutOfRange, "basis index must lie in 1..2^g");
  return {[basis, i](const CVector& z) { return (*basis)(i, z); }, 2};
}

double pointwise_norm(const SectionEvaluator& s, const CVector& z, const SiegelPoint& tau) {
  if (s.weight_power < 0) throw Error(ErrorCode::WeightMismatch, "negative weight has no holomorphic sections");
  const HermitianPairing H(tau);
  return std::abs(s.eval(z)) * std::exp(-s.weight_power * kPi * H.imag_quadratic(z));
}

// ---------------------------------------------------------------------------

QuadratureGrid::QuadratureGrid(int g, int n_per_dim) : g_(g), n_(n_per_dim), size_(1) {
  if (g < 1 || n_per_dim < 1) throw Error(ErrorCode::InvalidArgument, "grid needs g >= 1 and n >= 1");
  for (int k = 0; k < 2 * g; ++k) size_ *= static_cast<std::size_t>(n_per_dim);
}

CVector QuadratureGrid::point(const SiegelPoint& tau, std::size_t index) const {
  if (index >= size_) throw Error(ErrorCode::IndexOutOfRange, "grid node index out of range");
  require_dim(g_, tau.genus(), "tau");
  RVector u(g_), v(g_);
  const auto n = static_cast<std::size_t>(n_);
  for (int k = 0; k < g_; ++k, index /= n) u(k) = static_cast<double>(index % n) / n_;
  for (int k = 0; k < g_; ++k, index /= n) v(k) = static_cast<double>(index % n) / n_;
  return u.cast<cplx>() + tau.tau() * v.cast<cplx>();
}

int default_quadrature_n(int g) {
  if (g == 1) return 64;
  if (g == 2) return 24;
  throw Error(ErrorCode::GenusTooLargeForQuadrature, "no quadrature default for g >= 3");
}

cplx l2_inner(const SectionEvaluator& s1, const SectionEvaluator& s2, const SiegelPoint& tau,
              const QuadratureGrid& grid, Execution exec) {
  if (s1.weight_power != s2.weight_power)
    throw Error(ErrorCode::WeightMismatch, "sections belong to different powers of L");
  if (grid.genus() != tau.genus()) throw Error(ErrorCode::DimensionMismatch, "grid and tau differ in genus");

  const HermitianPairing H(tau);
  const double k = s1.weight_power;
  auto integrand = [&](std::size_t idx) {
    const CVector z = grid.point(tau, idx);
    return s1.eval(z) * std::conj(s2.eval(z)) * std::exp(-2.0 * k * kPi * H.imag_quadratic(z));
  };

  if (exec == Execution::Serial) {
    CompensatedSum sum;
    for (std::size_t idx = 0; idx < grid.size(); ++idx) sum.add(integrand(idx));
    return sum.value() * grid.weight();
  }

  const std::size_t chunks = (grid.size() + kReductionChunk - 1) / kReductionChunk;
  std::vector<cplx> partial(chunks);
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t c = 0; c < static_cast<std::ptrdiff_t>(chunks); ++c) {
    try {
      CompensatedSum sum;
      const std::size_t end = std::min(grid.size(), (c + 1) * kReductionChunk);
      for (std::size_t idx = c * kReductionChunk; idx < end; ++idx) sum.add(integrand(idx));
      partial[c] = sum.value();
    } catch (...) {
#pragma omp critical(siegelkit_l2_inner)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return pairwise_sum(partial) * grid.weight();
}

CMatrix gram_matrix(const SiegelPoint& tau, const QuadratureGrid& grid, Execution exec,
                    const TruncationPolicy& policy) {
  const int g = tau.genus();
  if (g > 2) throw Error(ErrorCode::GenusTooLargeForQuadrature, "quadrature cost grows as n^{2g}");
  if (grid.genus() != g) throw Error(ErrorCode::DimensionMismatch, "grid and tau differ in genus");

  const SecondOrderBasis basis(tau, policy);
  const HermitianPairing H(tau);
  const int dim = basis.size();
  const std::size_t chunks = (grid.size() + kReductionChunk - 1) / kReductionChunk;
  // partial[c * dim * dim + i * dim + j]
  std::vector<cplx> partial(chunks * dim * dim);

  auto run_chunk = [&](std::size_t c) {
    std::vector<CompensatedSum> sums(dim * dim);
    std::vector<cplx> v(dim);
    const std::size_t end = std::min(grid.size(), (c + 1) * kReductionChunk);
    for (std::size_t idx = c * kReductionChunk; idx < end; ++idx) {
      const CVector z = grid.point(tau, idx);
      basis.evaluate_all(z, v);
      // h^2 weight per factor: exp(-2 pi H(y, y))
      const double w = std::exp(-2.0 * kPi * H.imag_quadratic(z));
      for (auto& x : v) x *= w;
      for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) sums[i * dim + j].add(v[i] * std::conj(v[j]));
    }
    for (int e = 0; e < dim * dim; ++e) partial[c * dim * dim + e] = sums[e].value();
  };

  if (exec == Execution::Serial) {
    for (std::size_t c = 0; c < chunks; ++c) run_chunk(c);
  } else {
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t c = 0; c < static_cast<std::ptrdiff_t>(chunks); ++c) {
      try {
        run_chunk(static_cast<std::size_t>(c));
      } catch (...) {
#pragma omp critical(siegelkit_gram)
        if (!failure) failure = std::current_exception();
      }
    }
    if (failure) std::rethrow_exception(failure);
  }

  CMatrix G(dim, dim);
  std::vector<cplx> column(chunks);
  for (int e = 0; e < dim * dim; ++e) {
    for (std::size_t c = 0; c < chunks; ++c) column[c] = partial[c * dim * dim + e];
    G(e / dim, e % dim) = pairwise_sum(column) * grid.weight();
  }
  return G;
}

CMatrix gram_matrix_reference(const SiegelPoint& tau, const QuadratureGrid& grid,
                              const TruncationPolicy& policy) {
  const int g = tau.genus();
  if (g > 2) throw Error(ErrorCode::GenusTooLargeForQuadrature, "quadrature cost grows as n^{2g}");
  if (grid.genus() != g) throw Error(ErrorCode::DimensionMismatch, "grid and tau differ in genus");
  const int dim = 1 << g;
  const HermitianPairing H(tau);
  std::vector<CompensatedSum> sums(dim * dim);
  std::vector<cplx> v(dim);
  for (std::size_t idx = 0; idx < grid.size(); ++idx) {
    const CVector z = grid.point(tau, idx);
    for (int i = 0; i < dim; ++i) v[i] = second_order_basis(i + 1, z, tau, policy);
    const double w = std::exp(-4.0 * kPi * H.imag_quadratic(z));
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) sums[i * dim + j].add(v[i] * std::conj(v[j]) * w);
  }
  CMatrix G(dim, dim);
  for (int e = 0; e < dim * dim; ++e) G(e / dim, e % dim) = sums[e].value() * grid.weight();
  return G;
}

cplx cotangent_inner(const SiegelPoint& tau, const CVector& alpha, const CVector& beta) {
  require_dim(tau.genus(), alpha.size(), "alpha");
  require_dim(tau.genus(), beta.size(), "beta");
  return 2.0 * alpha.transpose() * tau.imag().cast<cplx>() * beta.conjugate();
}

double det_hodge_norm(const SiegelPoint& tau) { return std::pow(2.0, tau.genus()) * tau.imag_det(); }

}  // namespace siegelkit
