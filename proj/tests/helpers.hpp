#pragma once

#include <Eigen/Dense>
#include <random>

#include "macproj/fields.hpp"
#include "macproj/linalg.hpp"

namespace testing {

inline macproj::PressureField random_pressure(const macproj::GridPtr& g, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  macproj::PressureField p(g);
  for (double& x : p.values()) x = u(rng);
  return p;
}

inline macproj::VelocityField random_velocity(const macproj::GridPtr& g, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  macproj::VelocityField v(g);
  for (double& x : v.values()) x = u(rng);
  v.zero_exterior();
  return v;
}

inline Eigen::MatrixXd dense(const macproj::CsrMatrix& m) {
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(m.rows), static_cast<Eigen::Index>(m.cols));
  for (std::size_t r = 0; r < m.rows; ++r) {
    for (std::size_t k = m.row_ptr[r]; k < m.row_ptr[r + 1]; ++k) {
      d(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(m.col_idx[k])) += m.values[k];
    }
  }
  return d;
}

inline Eigen::VectorXd to_eigen(std::span<const double> v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

}  // namespace testing
