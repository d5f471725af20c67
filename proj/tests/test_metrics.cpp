#include <doctest.h>

#include <memory>

#include "oracles.hpp"
#include "siegelkit/metrics.hpp"
#include "siegelkit/sampling.hpp"

using namespace siegelkit;
using oracle::kPi;
using oracle::max_abs;

namespace {

SiegelPoint g1_point(cplx t) { return validate_siegel(CMatrix::Constant(1, 1, t)); }

double gram_deviation(const SiegelPoint& tau, const CMatrix& G) {
  const double expected = 1.0 / std::sqrt(tau.imag_det());
  return max_abs(G - expected * CMatrix::Identity(G.rows(), G.cols()));
}

}  // namespace

TEST_CASE("hermitian pairing") {
  Rng rng(201);
  const SiegelPoint tau = random_siegel_point(3, rng);
  const HermitianPairing H(tau);
  const CVector z = random_complex_vector(3, rng), w = random_complex_vector(3, rng);
  CHECK(std::abs(H(z, w) - std::conj(H(w, z))) < 1e-15);
  CHECK(std::abs(H(z, z).imag()) < 1e-15);
  CHECK(H(z, z).real() >= 0.0);
  const CVector y = z.imag().cast<cplx>();
  CHECK(H.imag_quadratic(z) == doctest::Approx(H(y, y).real()).epsilon(1e-14));
}

TEST_CASE("pointwise norm") {
  const SiegelPoint tau = siegel_identity(1);
  CHECK(pointwise_norm(constant_section(1.0), CVector::Constant(1, cplx(0.3, 0.7)), tau) == 1.0);
  const SectionEvaluator theta = riemann_theta_section(tau);
  CHECK(pointwise_norm(theta, CVector::Zero(1), tau) == doctest::Approx(1.0864348112).epsilon(1e-10));

  Rng rng(203);
  for (int g = 1; g <= 3; ++g)
    for (int s = 0; s < 10; ++s) {
      const SiegelPoint t = random_siegel_point(g, rng);
      const SectionEvaluator th = riemann_theta_section(t);
      const CVector z = random_z_in_cell(t, rng);
      const CVector w = z + random_lattice_vector(g, 2, rng).point(t);
      const double a = pointwise_norm(th, z, t), b = pointwise_norm(th, w, t);
      CHECK(std::abs(a - b) < 1e-10);
    }
  CHECK_THROWS_AS(pointwise_norm({[](const CVector&) { return cplx(1.0); }, -1}, CVector::Zero(1), tau), Error);
}

TEST_CASE("l2 products of the second-order basis") {
  auto basis = std::make_shared<const SecondOrderBasis>(siegel_identity(1));
  const QuadratureGrid grid(1, 64);
  const SiegelPoint tau = siegel_identity(1);
  const auto s1 = second_order_section(basis, 1), s2 = second_order_section(basis, 2);
  CHECK(std::abs(l2_inner(s1, s1, tau, grid) - 1.0) < 1e-8);
  CHECK(std::abs(l2_inner(s1, s2, tau, grid)) < 1e-8);

  const SiegelPoint tau2 = g1_point(cplx(0, 2));
  auto basis2 = std::make_shared<const SecondOrderBasis>(tau2);
  CHECK(std::abs(l2_inner(second_order_section(basis2, 1), second_order_section(basis2, 1), tau2, grid) -
                 std::sqrt(0.5)) < 1e-8);

  // conjugate-linear in the second slot, hermitian symmetric
  const SectionEvaluator twice_i{[s2](const CVector& z) { return cplx(0, 2) * s2.eval(z); }, 2};
  CHECK(std::abs(l2_inner(s1, twice_i, tau, grid) - cplx(0, -2) * l2_inner(s1, s2, tau, grid)) < 1e-15);
  CHECK(l2_inner(s1, s2, tau, grid) == std::conj(l2_inner(s2, s1, tau, grid)));

  CHECK_THROWS_AS(l2_inner(s1, riemann_theta_section(tau), tau, grid), Error);
  CHECK_THROWS_AS(l2_inner(s1, s1, tau, QuadratureGrid(2, 4)), Error);
}

TEST_CASE("gram matrix examples") {
  CHECK(gram_deviation(siegel_identity(1), gram_matrix(siegel_identity(1), QuadratureGrid(1, 64))) < 1e-8);
  CHECK(gram_deviation(siegel_identity(2), gram_matrix(siegel_identity(2), QuadratureGrid(2, 24))) < 1e-6);

  const SiegelPoint shifted = g1_point(cplx(1, 1));
  const CMatrix G64 = gram_matrix(shifted, QuadratureGrid(1, 64));
  const CMatrix G48 = gram_matrix(shifted, QuadratureGrid(1, 48));
  CHECK(max_abs(G64 - G48) < 1e-10);
  CHECK(std::abs(G64(0, 1)) < 1e-8);
  CHECK(max_abs(G64 - gram_matrix(siegel_identity(1), QuadratureGrid(1, 64))) < 1e-8);

  CHECK_THROWS_AS(gram_matrix(siegel_identity(3), QuadratureGrid(3, 4)), Error);
}

TEST_CASE("gram matrix: random tau, convergence, positivity, reference kernel") {
  Rng rng(207);
  for (int s = 0; s < 10; ++s) {
    const SiegelPoint tau = random_siegel_point(1, rng);
    const CMatrix G64 = gram_matrix(tau, QuadratureGrid(1, 64));
    const CMatrix G32 = gram_matrix(tau, QuadratureGrid(1, 32));
    CHECK(gram_deviation(tau, G64) < 1e-8);
    CHECK(max_abs(G64 - G32) < 1e-10);
    CHECK(max_abs(G64 - G64.adjoint()) < 1e-15);
    Eigen::SelfAdjointEigenSolver<CMatrix> eig(G64);
    CHECK(eig.eigenvalues().minCoeff() > 0.0);
    CHECK(max_abs(G64 - gram_matrix_reference(tau, QuadratureGrid(1, 64))) < 1e-13);
  }
  const SiegelPoint tau = random_siegel_point(2, rng);
  const QuadratureGrid grid(2, 12);
  CHECK(max_abs(gram_matrix(tau, grid) - gram_matrix_reference(tau, grid)) < 1e-13);
}

TEST_CASE("quadrature grid") {
  const QuadratureGrid grid(2, 5);
  CHECK(grid.size() == 625);
  CHECK(grid.weight() * grid.size() == doctest::Approx(1.0));
  const SiegelPoint tau = siegel_identity(2);
  CHECK(std::abs(grid.point(tau, 1)(0) - 0.2) < 1e-15);  // u_1 varies fastest
  CHECK_THROWS_AS(grid.point(tau, 625), Error);
  CHECK_THROWS_AS(QuadratureGrid(1, 0), Error);
  CHECK(default_quadrature_n(1) == 64);
  CHECK(default_quadrature_n(2) == 24);
}

TEST_CASE("Hodge determinant norm") {
  CHECK(det_hodge_norm(siegel_identity(1)) == 2.0);
  CMatrix t = CMatrix::Zero(2, 2);
  t(0, 0) = cplx(0, 1);
  t(1, 1) = cplx(0, 3);
  const SiegelPoint tau = validate_siegel(t);
  CHECK(det_hodge_norm(tau) == doctest::Approx(12.0).epsilon(1e-15));

  // Gram determinant of <dz_i, dz_j>
  CMatrix pairings(2, 2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      pairings(i, j) = cotangent_inner(tau, CVector::Unit(2, i), CVector::Unit(2, j));
  CHECK(std::abs(pairings.determinant() - 12.0) < 1e-13);

  Rng rng(211);
  for (int g = 1; g <= 4; ++g) {
    const SiegelPoint p = random_siegel_point(g, rng);
    const SiegelPoint scaled = validate_siegel(p.tau().real().cast<cplx>() + cplx(0, 3.0) * p.imag().cast<cplx>());
    CHECK(det_hodge_norm(scaled) == doctest::Approx(std::pow(3.0, g) * det_hodge_norm(p)).epsilon(1e-13));
  }
}
