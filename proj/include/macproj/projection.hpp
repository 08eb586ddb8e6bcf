#pragma once

#include <memory>

#include "macproj/fields.hpp"
#include "macproj/linalg.hpp"
#include "macproj/operators.hpp"

namespace macproj {

/// w = v + grad_N psi with div_N v = 0 and psi of zero mean.
struct Decomposition {
  VelocityField v;
  PressureField psi;
  SolverStats stats;
};

/// Discrete Helmholtz-Leray machinery on one grid. The potential solves
///   int grad psi . grad xi = int w . grad xi   for all cell fields xi,
/// i.e. the pure-Neumann system |K| (-div grad psi)_K = -|K| (div w)_K.
class Projector {
 public:
  explicit Projector(GridPtr grid, double tolerance = 1e-12, int max_iterations = 20000);
  Projector(std::shared_ptr<OperatorWorkspace> ops, double tolerance, int max_iterations);

  /// Throws SolverError when the Poisson solve fails.
  Decomposition decompose(const VelocityField& w) const;
  /// Orthogonal projection onto the discretely divergence-free fields.
  VelocityField project(const VelocityField& w) const;
  /// |w|_{*,0} = sup over unit divergence-free v of int w . v = ||P w||.
  double star0_seminorm(const VelocityField& w) const;

  /// Solve |K| (-div grad psi)_K = rhs_K with mean-zero psi. `rhs_scale`
  /// and `residual_reference` as in SparseSystem.
  PressureField solve_potential(std::vector<double> rhs, SolverStats* stats = nullptr,
                                const PressureField* guess = nullptr, double rhs_scale = 0.0,
                                double residual_reference = 0.0) const;
  /// psi with -div grad psi = -factor div w, mean zero. With `data_relative`
  /// the solve tolerance is relative to the face fluxes of w rather than to
  /// div w, which keeps nearly divergence-free inputs solvable.
  PressureField potential_of(const VelocityField& w, double factor, SolverStats* stats = nullptr,
                             bool data_relative = true) const;

  const OperatorWorkspace& operators() const { return *ops_; }
  double tolerance() const { return tolerance_; }

 private:
  std::shared_ptr<OperatorWorkspace> ops_;
  double tolerance_;
  int max_iterations_;
};

Decomposition decompose(const VelocityField& w);
VelocityField project_EN(const VelocityField& w);
double star0_seminorm(const VelocityField& w);
/// Projection of a face-averaged initial datum that is not divergence-free.
VelocityField leray_initialize(const VelocityField& w);

}  // namespace macproj
