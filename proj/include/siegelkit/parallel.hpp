#pragma once

// Execution policy and the deterministic reductions shared by the serial
// reference paths and the OpenMP kernels.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace siegelkit {

enum class Execution { Serial, Parallel };

/// Number of OpenMP threads a Parallel kernel will use.
int max_threads();
/// Sets the OpenMP thread count (>= 1).
void set_threads(int n);

/// Neumaier-compensated accumulator for complex values.
class CompensatedSum {
 public:
  void add(std::complex<double> x) {
    add_part(re_, re_c_, x.real());
    add_part(im_, im_c_, x.imag());
  }
  void add(const CompensatedSum& other) {
    add(std::complex<double>(other.re_, other.im_));
    add(std::complex<double>(other.re_c_, other.im_c_));
  }
  std::complex<double> value() const { return {re_ + re_c_, im_ + im_c_}; }

 private:
  static void add_part(double& sum, double& comp, double x) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x))
      comp += (sum - t) + x;
    else
      comp += (x - t) + sum;
    sum = t;
  }
  double re_ = 0.0, re_c_ = 0.0, im_ = 0.0, im_c_ = 0.0;
};

/// Fixed-shape pairwise tree over `values` (index order). The result depends
/// only on values.size(), never on how the values were produced.
std::complex<double> pairwise_sum(std::span<const std::complex<double>> values);

/// Chunk size used by chunked kernels; independent of the thread count.
inline constexpr std::size_t kReductionChunk = 2048;

}  // namespace siegelkit
