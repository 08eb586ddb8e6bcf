#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <vector>

namespace macproj::par {

// Reductions are summed over fixed-size blocks, then the block partials are
// added in order. The result is independent of the thread count.
inline constexpr std::size_t kBlock = 2048;

template <class Term>
double blocked_sum(std::size_t n, Term term) {
  const std::size_t nblocks = (n + kBlock - 1) / kBlock;
  std::vector<double> partial(nblocks, 0.0);
  const auto nb = static_cast<std::ptrdiff_t>(nblocks);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t b = 0; b < nb; ++b) {
    const std::size_t lo = static_cast<std::size_t>(b) * kBlock;
    const std::size_t hi = std::min(n, lo + kBlock);
    double s = 0.0;
    for (std::size_t k = lo; k < hi; ++k) s += term(k);
    partial[b] = s;
  }
  double s = 0.0;
  for (double p : partial) s += p;
  return s;
}

inline double dot(std::span<const double> x, std::span<const double> y) {
  return blocked_sum(x.size(), [&](std::size_t k) { return x[k] * y[k]; });
}

inline double max_abs(std::span<const double> x) {
  double m = 0.0;
  for (double v : x) m = std::max(m, v < 0 ? -v : v);
  return m;
}

}  // namespace macproj::par
