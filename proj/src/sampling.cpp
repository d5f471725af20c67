#include "siegelkit/sampling.hpp"

namespace siegelkit {

double Rng::uniform(double lo, double hi) {
  const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

int Rng::uniform_int(int lo, int hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<int>(engine_() % span);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  // splitmix64 finalizer
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

SiegelPoint random_siegel_point(int g, Rng& rng) {
  RMatrix S(g, g), A(g, g);
  for (int i = 0; i < g; ++i)
    for (int j = i; j < g; ++j) S(i, j) = S(j, i) = rng.uniform(-0.5, 0.5);
  for (int i = 0; i < g; ++i)
    for (int j = 0; j < g; ++j) A(i, j) = rng.uniform(-0.5, 0.5);
  RMatrix Y = A * A.transpose() / static_cast<double>(g) + 0.5 * RMatrix::Identity(g, g);
  Y = (0.5 * (Y + Y.transpose())).eval();
  CMatrix tau(g, g);
  for (int i = 0; i < g; ++i)
    for (int j = 0; j < g; ++j) tau(i, j) = cplx(S(i, j), Y(i, j));
  return validate_siegel(tau);
}

TangentDirection random_tangent(int g, Rng& rng) {
  CMatrix X(g, g);
  for (int i = 0; i < g; ++i)
    for (int j = i; j < g; ++j) {
      const cplx v(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
      X(i, j) = v;
      X(j, i) = v;
    }
  return TangentDirection(X);
}

SymplecticMatrix random_symplectic_word(int g, int length, Rng& rng) {
  SymplecticMatrix M = SymplecticMatrix::identity(g);
  for (int step = 0; step < length; ++step) {
    const int kind = rng.uniform_int(0, 2);
    if (kind == 0) {
      RMatrix S = RMatrix::Zero(g, g);
      for (int i = 0; i < g; ++i)
        for (int j = i; j < g; ++j) S(i, j) = S(j, i) = rng.uniform_int(-1, 1);
      M = M * SymplecticMatrix::translation(S);
    } else if (kind == 1 && g > 1) {
      RMatrix U = RMatrix::Identity(g, g);
      const int i = rng.uniform_int(0, g - 1);
      int j = rng.uniform_int(0, g - 2);
      if (j >= i) ++j;
      U(i, j) = rng.uniform_int(0, 1) == 0 ? -1.0 : 1.0;
      M = M * SymplecticMatrix::change_of_basis(U);
    } else {
      M = M * SymplecticMatrix::inversion(g);
    }
  }
  return M;
}

CVector random_z_in_cell(const SiegelPoint& tau, Rng& rng) {
  const int g = tau.genus();
  RVector u(g), v(g);
  for (int i = 0; i < g; ++i) u(i) = rng.uniform(0.0, 1.0);
  for (int i = 0; i < g; ++i) v(i) = rng.uniform(0.0, 1.0);
  return u.cast<cplx>() + tau.tau() * v.cast<cplx>();
}

LatticeVector random_lattice_vector(int g, int bound, Rng& rng) {
  LatticeVector gamma{IVector(g), IVector(g)};
  for (int i = 0; i < g; ++i) gamma.m(i) = rng.uniform_int(-bound, bound);
  for (int i = 0; i < g; ++i) gamma.n(i) = rng.uniform_int(-bound, bound);
  return gamma;
}

CVector random_complex_vector(int g, Rng& rng) {
  CVector v(g);
  for (int i = 0; i < g; ++i) v(i) = cplx(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
  return v;
}

}  // namespace siegelkit
