#pragma once

#include <cmath>
#include <vector>

#include "helpers.hpp"
#include "macproj/operators.hpp"

namespace testing {

// Basis Z of {v on interior faces : div v = 0} and the |D|-weighted
// orthogonal projection onto span Z.
struct DenseKernel {
  std::vector<std::size_t> interior;
  Eigen::MatrixXd Z;
  Eigen::VectorXd m;

  explicit DenseKernel(const macproj::GridPtr& g) {
    const macproj::OperatorWorkspace ops(g);
    const Eigen::MatrixXd D = dense(ops.divergence());
    for (std::size_t f = 0; f < g->num_faces(); ++f) {
      if (!g->is_exterior(f)) interior.push_back(f);
    }
    Eigen::MatrixXd Di(D.rows(), static_cast<Eigen::Index>(interior.size()));
    m.resize(static_cast<Eigen::Index>(interior.size()));
    for (std::size_t k = 0; k < interior.size(); ++k) {
      Di.col(static_cast<Eigen::Index>(k)) = D.col(static_cast<Eigen::Index>(interior[k]));
      m[static_cast<Eigen::Index>(k)] = g->dual_volume(interior[k]);
    }
    Z = Eigen::FullPivLU<Eigen::MatrixXd>(Di).kernel();
  }

  Eigen::VectorXd restrict(const macproj::VelocityField& w) const {
    Eigen::VectorXd x(static_cast<Eigen::Index>(interior.size()));
    for (std::size_t k = 0; k < interior.size(); ++k) x[static_cast<Eigen::Index>(k)] = w[interior[k]];
    return x;
  }

  Eigen::VectorXd project(const macproj::VelocityField& w) const {
    const Eigen::MatrixXd gram = Z.transpose() * m.asDiagonal() * Z;
    const Eigen::VectorXd b = Z.transpose() * m.asDiagonal() * restrict(w);
    return Z * gram.ldlt().solve(b);
  }

  // sup over nonzero divergence-free v of (w, v) / ||v||
  double star0(const macproj::VelocityField& w) const {
    const Eigen::MatrixXd gram = Z.transpose() * m.asDiagonal() * Z;
    const Eigen::VectorXd b = Z.transpose() * m.asDiagonal() * restrict(w);
    return std::sqrt(b.dot(gram.ldlt().solve(b)));
  }
};

}  // namespace testing
