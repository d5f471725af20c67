#include <doctest.h>

#include "oracles.hpp"
#include "siegelkit/metrics.hpp"
#include "siegelkit/sampling.hpp"
#include "siegelkit/theta.hpp"

using namespace siegelkit;
using oracle::kPi;

namespace {

CVector vec1(cplx v) { return CVector::Constant(1, v); }

// |section difference| measured in the metric h^k at z
double h_scaled(cplx diff, const SiegelPoint& tau, const CVector& z, int k = 1) {
  return std::abs(diff) * std::exp(-k * kPi * HermitianPairing(tau).imag_quadratic(z));
}

ThetaCharacteristic random_characteristic(int g, Rng& rng) {
  ThetaCharacteristic ch{RVector(g), RVector(g)};
  for (int i = 0; i < g; ++i) {
    ch.a(i) = rng.uniform(-1.0, 1.0);
    ch.b(i) = rng.uniform(-1.0, 1.0);
  }
  return ch;
}

}  // namespace

TEST_CASE("theta at tau = i") {
  const SiegelPoint tau = siegel_identity(1);
  const ThetaResult r = theta_eval(ThetaCharacteristic::zero(1), vec1(0.0), tau);
  CHECK(r.value.real() == doctest::Approx(1.0864348112133080).epsilon(1e-15));
  CHECK(r.value.imag() == 0.0);
  CHECK(std::abs(r.value - oracle::theta_box(vec1(0.0), tau.tau(), 10)) < 1e-15);
  CHECK(r.error_bound == doctest::Approx(1e-14));
  CHECK(r.radius > 0.0);
  CHECK(r.terms >= 1);
}

TEST_CASE("theta at (0, 2i), the unnormalized first basis element") {
  const SiegelPoint tau2 = validate_siegel(CMatrix::Constant(1, 1, cplx(0, 2)));
  const cplx raw = theta_eval(ThetaCharacteristic::zero(1), vec1(0.0), tau2).value;
  // sum_m exp(-2 pi m^2) = 1 + 2 e^{-2 pi} + ... = 1.00373488548773909...
  CHECK(raw.real() == doctest::Approx(1.0037348854877391).epsilon(1e-15));
  CHECK(std::abs(raw - oracle::theta_box(vec1(0.0), tau2.tau(), 10)) < 1e-15);
  const cplx basis = second_order_basis(1, vec1(0.0), siegel_identity(1));
  CHECK(std::abs(basis - std::sqrt(2.0) * raw) < 1e-15);
}

TEST_CASE("series agrees with the box sum") {
  Rng rng(101);
  for (int g = 1; g <= 3; ++g) {
    for (int s = 0; s < 6; ++s) {
      const SiegelPoint tau = random_siegel_point(g, rng);
      const ThetaCharacteristic ch = s % 2 ? random_characteristic(g, rng) : ThetaCharacteristic::zero(g);
      const CVector z = random_z_in_cell(tau, rng);
      const ThetaResult r = theta_eval(ch, z, tau);
      const cplx box = oracle::theta_box(ch.a, ch.b, z, tau.tau(), g == 3 ? 7 : 12);
      CHECK(std::abs(r.value - box) <= r.error_bound + 1e-13 * std::abs(box));
    }
  }
}

TEST_CASE("periodicity and evenness") {
  const SiegelPoint tau = siegel_identity(1);
  const ThetaCharacteristic zero = ThetaCharacteristic::zero(1);
  CHECK(std::abs(theta_eval(zero, vec1(0.3), tau).value - theta_eval(zero, vec1(1.3), tau).value) < 1e-14);

  Rng rng(103);
  for (int g = 1; g <= 3; ++g) {
    for (int s = 0; s < 20; ++s) {
      const SiegelPoint t = random_siegel_point(g, rng);
      const ThetaSeries theta(ThetaCharacteristic::zero(g), t);
      const CVector z = random_z_in_cell(t, rng);
      CHECK(h_scaled(theta(-z).value - theta(z).value, t, z) < 1e-12);
    }
  }
}

TEST_CASE("factor of automorphy") {
  Rng rng(107);
  const SiegelPoint tau = random_siegel_point(2, rng);
  const LatticeVector pure_m{Eigen::Vector2i(3, -1), Eigen::Vector2i::Zero()};
  CHECK(factor_of_automorphy(pure_m, random_complex_vector(2, rng), tau) == cplx(1.0, 0.0));

  const LatticeVector n1{Eigen::VectorXi::Zero(1), Eigen::VectorXi::Ones(1)};
  const cplx e = factor_of_automorphy(n1, vec1(0.0), siegel_identity(1));
  CHECK(e.real() == doctest::Approx(23.140692632779267).epsilon(1e-15));
  CHECK(std::abs(e.imag()) < 1e-12);

  for (int g = 1; g <= 3; ++g)
    for (int s = 0; s < 20; ++s) {
      const SiegelPoint t = random_siegel_point(g, rng);
      const LatticeVector a = random_lattice_vector(g, 2, rng);
      const LatticeVector b = random_lattice_vector(g, 2, rng);
      const CVector z = random_z_in_cell(t, rng);
      const cplx lhs = factor_of_automorphy(a + b, z, t);
      const cplx rhs = factor_of_automorphy(a, z + b.point(t), t) * factor_of_automorphy(b, z, t);
      CHECK(std::abs(lhs - rhs) <= 1e-12 * std::abs(lhs));
    }
}

TEST_CASE("quasi-periodicity of the Riemann theta function") {
  Rng rng(109);
  for (int g = 1; g <= 3; ++g)
    for (int s = 0; s < 30; ++s) {
      const SiegelPoint tau = random_siegel_point(g, rng);
      const ThetaSeries theta(ThetaCharacteristic::zero(g), tau);
      const CVector z = random_z_in_cell(tau, rng);
      const LatticeVector gamma = random_lattice_vector(g, 2, rng);
      const CVector w = z + gamma.point(tau);
      const cplx lhs = theta(w).value;
      const cplx rhs = factor_of_automorphy(gamma, z, tau) * theta(z).value;
      CHECK(h_scaled(lhs - rhs, tau, w) < 1e-10);
    }
}

TEST_CASE("second-order basis: sections of the square") {
  Rng rng(113);
  for (int g = 1; g <= 2; ++g) {
    for (int s = 0; s < 6; ++s) {
      const SiegelPoint tau = random_siegel_point(g, rng);
      const SecondOrderBasis basis(tau);
      const CVector z = random_z_in_cell(tau, rng);
      const LatticeVector gamma = random_lattice_vector(g, 2, rng);
      const CVector w = z + gamma.point(tau);
      const cplx e = factor_of_automorphy(gamma, z, tau);
      for (int i = 1; i <= basis.size(); ++i) {
        // independent single evaluations on both sides
        const cplx lhs = second_order_basis(i, w, tau);
        const cplx rhs = e * e * second_order_basis(i, z, tau);
        CHECK(h_scaled(lhs - rhs, tau, w, 2) < 1e-10);
        CHECK(basis(i, z) == second_order_basis(i, z, tau));
      }
    }
  }
  CHECK_THROWS_AS(second_order_basis(3, vec1(0.0), siegel_identity(1)), Error);
  CHECK_THROWS_AS(second_order_basis(0, vec1(0.0), siegel_identity(1)), Error);
  CHECK(SecondOrderBasis::sigma(2, 1) == Eigen::Vector2i(0, 0));
  CHECK(SecondOrderBasis::sigma(2, 2) == Eigen::Vector2i(0, 1));
  CHECK(SecondOrderBasis::sigma(2, 4) == Eigen::Vector2i(1, 1));
}

// d/d(conj s) = (d/da + i d/db) / 2 along s = a + i b, each partial by a
// Richardson-extrapolated central difference.
template <class F>
cplx dbar(F&& f, double h) {
  auto central = [&](cplx dir, double step) { return (f(step * dir) - f(-step * dir)) / (2 * step); };
  auto partial = [&](cplx dir) { return (4.0 * central(dir, h / 2) - central(dir, h)) / 3.0; };
  return 0.5 * (partial(1.0) + cplx(0, 1) * partial(cplx(0, 1)));
}

TEST_CASE("second-order basis is holomorphic in tau and z") {
  Rng rng(127);
  for (int g = 1; g <= 2; ++g) {
    const SiegelPoint tau = random_siegel_point(g, rng);
    const CVector z = random_z_in_cell(tau, rng);
    const TangentDirection X = random_tangent(g, rng);
    const CVector V = random_complex_vector(g, rng);
    for (int i = 1; i <= (1 << g); ++i) {
      auto at_tau = [&](cplx s) { return second_order_basis(i, z, validate_siegel(tau.tau() + s * X.matrix())); };
      auto at_z = [&](cplx s) { return second_order_basis(i, z + s * V, tau); };
      CHECK(std::abs(dbar(at_tau, 1e-3)) < 1e-6);
      CHECK(std::abs(dbar(at_z, 1e-3)) < 1e-6);
    }
  }
}

TEST_CASE("truncation soundness: halving epsilon stays within the previous bound") {
  Rng rng(131);
  for (int g = 1; g <= 3; ++g)
    for (int s = 0; s < 5; ++s) {
      const SiegelPoint tau = random_siegel_point(g, rng);
      const CVector z = random_z_in_cell(tau, rng);
      double eps = 1e-6;
      ThetaResult prev = theta_eval(ThetaCharacteristic::zero(g), z, tau, {eps, 40.0});
      for (int k = 0; k < 6; ++k) {
        eps /= 2;
        const ThetaResult next = theta_eval(ThetaCharacteristic::zero(g), z, tau, {eps, 40.0});
        CHECK(std::abs(next.value - prev.value) <= prev.error_bound);
        CHECK(next.radius >= prev.radius);
        prev = next;
      }
    }
}

TEST_CASE("tail bound is decreasing and dominates the exact g = 1 tail") {
  const double rho = std::sqrt(kPi);
  double last = gaussian_tail_bound(1, rho, rho);
  for (double R = rho + 0.5; R < 8.0; R += 0.5) {
    const double b = gaussian_tail_bound(1, rho, R);
    CHECK(b < last);
    last = b;
    double exact = 0.0;  // sum over |x| > R of exp(-x^2) for x in rho*Z
    for (int m = 1; m < 100; ++m)
      if (m * rho > R) exact += 2.0 * std::exp(-m * m * rho * rho);
    CHECK(exact <= b);
  }
}

// d theta / d tau along E_jk + E_kj against the second z-derivative. From the
// series, termwise: d/d tau_jj -> pi i n_j^2, d^2/dz_j^2 -> -4 pi^2 n_j^2, so
// the ratio is 1/(4 pi i); the symmetric off-diagonal direction doubles it.
TEST_CASE("heat equation") {
  Rng rng(137);
  const int g = 2;
  const SiegelPoint tau = random_siegel_point(g, rng);
  const CVector z = random_z_in_cell(tau, rng);

  // symbolic derivatives of the truncated box series
  auto series_derivs = [&](int j, int k) {
    cplx dtau = 0.0, dzz = 0.0;
    oracle::for_each_in_box(g, 10, [&](const Eigen::VectorXi& m) {
      const Eigen::VectorXd n = m.cast<double>();
      const cplx term = std::exp(cplx(0, kPi) * (n.cast<cplx>().dot(tau.tau() * n.cast<cplx>()) +
                                                  2.0 * n.cast<cplx>().dot(z)));
      const double dir = (j == k) ? n(j) * n(j) : 2.0 * n(j) * n(k);
      dtau += cplx(0, kPi) * dir * term;
      dzz += -4.0 * kPi * kPi * n(j) * n(k) * term;
    });
    return std::pair{dtau, dzz};
  };
  const cplx diag_const = 1.0 / cplx(0, 4 * kPi);
  const cplx off_const = 1.0 / cplx(0, 2 * kPi);
  auto [dt00, dz00] = series_derivs(0, 0);
  auto [dt01, dz01] = series_derivs(0, 1);
  CHECK(std::abs(dt00 - diag_const * dz00) < 1e-12 * std::abs(dt00));
  CHECK(std::abs(dt01 - off_const * dz01) < 1e-12 * std::abs(dt01));

  // and the library's series, differentiated numerically in tau and in z
  const ThetaCharacteristic ch = ThetaCharacteristic::zero(g);
  const double h = 1e-4;
  auto theta_tau = [&](const TangentDirection& X, double s) {
    return theta_eval(ch, z, validate_siegel(tau.tau() + s * X.matrix())).value;
  };
  auto theta_z = [&](const CVector& d) { return theta_eval(ch, z + d, tau).value; };
  const cplx theta0 = theta_z(CVector::Zero(g));
  for (auto [j, k] : {std::pair{0, 0}, std::pair{1, 1}, std::pair{0, 1}}) {
    const TangentDirection X = TangentDirection::elementary(g, j, k);
    const cplx fd_tau = (theta_tau(X, h) - theta_tau(X, -h)) / (2 * h);
    CVector ej = CVector::Zero(g), ek = CVector::Zero(g);
    ej(j) = h;
    ek(k) = h;
    const cplx fd_zz = j == k ? (theta_z(ej) - 2.0 * theta0 + theta_z(-ej)) / (h * h)
                              : (theta_z(ej + ek) - theta_z(ej - ek) - theta_z(ek - ej) + theta_z(-ej - ek)) /
                                    (4 * h * h);
    const cplx c = j == k ? diag_const : off_const;
    CHECK(std::abs(fd_tau - c * fd_zz) <= 1e-6 * std::max(1.0, std::abs(fd_tau)));
  }
}

TEST_CASE("errors") {
  const SiegelPoint tau = siegel_identity(1);
  const ThetaCharacteristic zero = ThetaCharacteristic::zero(1);
  CHECK_THROWS_AS(theta_eval(zero, vec1(0.0), tau, {0.0, 40.0}), Error);
  CHECK_THROWS_AS(theta_eval(zero, vec1(0.0), tau, {1.5, 40.0}), Error);
  try {
    theta_eval(zero, vec1(cplx(0, 1e3)), tau);
    FAIL("expected RadiusCapExceeded");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::RadiusCapExceeded);
  }
  try {
    theta_eval(zero, vec1(0.0), tau, {1e-14, 2.0});
    FAIL("expected RadiusCapExceeded");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::RadiusCapExceeded);
  }
  CHECK_THROWS_AS(theta_eval(zero, CVector::Zero(2), tau), Error);
}
