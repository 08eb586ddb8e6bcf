#pragma once

#include <array>
#include <cmath>
#include <numbers>

namespace macproj::quad {

// 6-point Gauss-Legendre rule on [-1, 1]; exact for polynomials of degree 11.
inline constexpr int kPoints = 6;

struct Rule {
  std::array<double, kPoints> x;
  std::array<double, kPoints> w;
};

// Newton iteration on P_n from the Chebyshev guess.
inline Rule make_rule() {
  Rule r{};
  const int n = kPoints;
  for (int i = 0; i < n; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    r.x[n - 1 - i] = x;
    r.w[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return r;
}

inline const Rule& rule() {
  static const Rule r = make_rule();
  return r;
}

inline const std::array<double, kPoints>& nodes() { return rule().x; }

/// Node on [lo, hi] mapped from reference node q.
inline double map(double lo, double hi, int q) {
  return 0.5 * (lo + hi) + 0.5 * (hi - lo) * nodes()[q];
}

/// Weight of node q normalised so the weights on an interval sum to 1.
inline double mean_weight(int q) { return 0.5 * rule().w[q]; }

}  // namespace macproj::quad
