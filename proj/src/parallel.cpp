#include "siegelkit/parallel.hpp"

#include <omp.h>

#include <algorithm>

namespace siegelkit {

int max_threads() { return omp_get_max_threads(); }

void set_threads(int n) { omp_set_num_threads(std::max(n, 1)); }

std::complex<double> pairwise_sum(std::span<const std::complex<double>> values) {
  if (values.empty()) return {0.0, 0.0};
  if (values.size() <= 8) {
    CompensatedSum s;
    for (const auto& v : values) s.add(v);
    return s.value();
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

}  // namespace siegelkit
