#pragma once

// Seeded generators for test points. Built on mt19937_64, whose output
// sequence is fixed by the standard, with hand-rolled mappings to keep
// draws identical across standard libraries.

#include <cstdint>
#include <random>

#include "siegelkit/siegel.hpp"
#include "siegelkit/theta.hpp"

namespace siegelkit {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [lo, hi).
  double uniform(double lo, double hi);
  /// Uniform integer on [lo, hi].
  int uniform_int(int lo, int hi);

 private:
  std::mt19937_64 engine_;
};

/// Derives an independent stream seed from a base seed and a label.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

/// tau = S + i (A A^t / g + 0.5 I) with S, A entries uniform in [-0.5, 0.5).
SiegelPoint random_siegel_point(int g, Rng& rng);
/// Symmetric complex matrix with real and imaginary entries uniform in [-1, 1).
TangentDirection random_tangent(int g, Rng& rng);
/// Product of `length` random generators (translations with entries in
/// {-1,0,1}, elementary unimodular changes of basis, inversion).
SymplecticMatrix random_symplectic_word(int g, int length, Rng& rng);
/// z = u + tau v with u, v uniform in [0,1)^g.
CVector random_z_in_cell(const SiegelPoint& tau, Rng& rng);
/// Lattice vector with entries uniform in [-bound, bound].
LatticeVector random_lattice_vector(int g, int bound, Rng& rng);
/// Complex vector with entries uniform in the unit square.
CVector random_complex_vector(int g, Rng& rng);

}  // namespace siegelkit
