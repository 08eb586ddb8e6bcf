#pragma once

#include "macproj/fields.hpp"
#include "macproj/linalg.hpp"

namespace macproj {

// MAC finite-volume operators. With the measure-weighted inner products
//   int grad p . v + int p div v = 0              (duality)
//   int (-lap u) . v = int (-lap v) . u,  int (-lap u) . u = ||u||_{1,2}^2
//   b(a, w, w) = 0 whenever div a = 0             (skew-symmetry)
// hold to rounding on any grid.
//
// The functions in this namespace gather per output entry and run threaded;
// macproj::ref holds serial scatter loops over faces and dual faces used as
// the reference implementation in tests and benchmarks.

/// (p_L - p_K) / d_sigma on interior faces, 0 on the walls.
VelocityField grad_N(const PressureField& p);

/// (1/|K|) sum over faces of |sigma| u_sigma n_{K,sigma}.
PressureField div_N(const VelocityField& u);

/// Delta_N u: on D_sigma, -(1/|D_sigma|) sum_eps |eps| (u_sigma - u_sigma') / d_eps,
/// with u = 0 beyond the walls. Zero on exterior faces.
VelocityField laplace_N(const VelocityField& u);

/// C_N: on D_sigma, (1/|D_sigma|) sum_eps F_eps(a) (w_sigma + w_sigma') / 2
/// with F_eps the outward mass flux of `a` through eps. `a` advects, `w` is
/// transported.
VelocityField convect_N(const VelocityField& a, const VelocityField& w);

/// Trilinear form int convect_N(a, w) . v.
double b_N(const VelocityField& a, const VelocityField& w, const VelocityField& v);

/// Outward-oriented mass flux of `a` through a dual face (in +e_axis).
double dual_flux(const DualFace& e, const VelocityField& a);

namespace ref {
VelocityField grad_N(const PressureField& p);
PressureField div_N(const VelocityField& u);
VelocityField laplace_N(const VelocityField& u);
VelocityField convect_N(const VelocityField& a, const VelocityField& w);
}  // namespace ref

/// Matrices of the operators, for the solvers and for export.
///   gradient:   faces x cells, rows of grad_N
///   divergence: cells x faces, rows of div_N
///   stiffness:  faces x faces, |D_sigma| (-Delta_N) (symmetric, interior rows only)
///   poisson:    cells x cells, the graph Laplacian sum |sigma|/d_sigma (p_K - p_L)
///               = |K| (-div_N grad_N p)_K
class OperatorWorkspace {
 public:
  explicit OperatorWorkspace(GridPtr grid);

  const MacGrid& grid() const { return *grid_; }
  const GridPtr& grid_ptr() const { return grid_; }
  const CsrMatrix& gradient() const { return gradient_; }
  const CsrMatrix& divergence() const { return divergence_; }
  const CsrMatrix& stiffness() const { return stiffness_; }
  const CsrMatrix& poisson() const { return poisson_; }

  /// alpha |D_sigma| I + stiffness + |D_sigma| C_N(a) on interior rows and
  /// identity on exterior rows. Reuses the cached sparsity pattern.
  const CsrMatrix& momentum_matrix(const VelocityField& a, double alpha);

  /// Matrix of w -> |D_sigma| C_N(a) w.
  CsrMatrix convection_matrix(const VelocityField& a) const;

 private:
  GridPtr grid_;
  CsrMatrix gradient_;
  CsrMatrix divergence_;
  CsrMatrix stiffness_;
  CsrMatrix poisson_;
  CsrMatrix momentum_;
};

}  // namespace macproj
