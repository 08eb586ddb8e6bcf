#include "macproj/projection.hpp"

#include <cmath>

namespace macproj {

Projector::Projector(GridPtr grid, double tolerance, int max_iterations)
    : Projector(std::make_shared<OperatorWorkspace>(std::move(grid)), tolerance, max_iterations) {}

Projector::Projector(std::shared_ptr<OperatorWorkspace> ops, double tolerance, int max_iterations)
    : ops_(std::move(ops)), tolerance_(tolerance), max_iterations_(max_iterations) {}

PressureField Projector::solve_potential(std::vector<double> rhs, SolverStats* stats,
                                         const PressureField* guess, double rhs_scale,
                                         double residual_reference) const {
  const MacGrid& g = ops_->grid();
  SparseSystem sys;
  sys.matrix = ops_->poisson();
  sys.rhs = std::move(rhs);
  sys.kind = SolverKind::kConjugateGradient;
  sys.tolerance = tolerance_;
  sys.max_iterations = max_iterations_;
  Nullspace ns;
  ns.weights.resize(g.num_cells());
  for (std::size_t c = 0; c < g.num_cells(); ++c) ns.weights[c] = g.cell_volume(c);
  sys.nullspace = std::move(ns);
  sys.rhs_scale = rhs_scale;
  sys.residual_reference = residual_reference;
  if (guess) sys.initial_guess.assign(guess->values().begin(), guess->values().end());
  SolveResult res = solve_spd(sys, true);
  if (stats) *stats = res.stats;
  PressureField psi(ops_->grid_ptr(), std::move(res.x));
  psi.remove_mean();
  return psi;
}

PressureField Projector::potential_of(const VelocityField& w, double factor, SolverStats* stats,
                                      bool data_relative) const {
  const MacGrid& g = ops_->grid();
  const PressureField div = div_N(w);
  std::vector<double> rhs(g.num_cells());
  double scale = 0.0;
  for (std::size_t c = 0; c < g.num_cells(); ++c) {
    rhs[c] = -factor * g.cell_volume(c) * div[c];
    double flux = 0.0;
    for (std::size_t f : g.cell_faces(c)) {
      if (f != kNoFace) flux += g.face_area(f) * std::abs(w[f]);
    }
    scale += factor * factor * flux * flux;
  }
  scale = std::sqrt(scale);
  return solve_potential(std::move(rhs), stats, nullptr, scale, data_relative ? scale : 0.0);
}

Decomposition Projector::decompose(const VelocityField& w) const {
  Decomposition d;
  d.psi = potential_of(w, 1.0, &d.stats);
  d.v = w - grad_N(d.psi);
  d.v.zero_exterior();
  return d;
}

VelocityField Projector::project(const VelocityField& w) const { return decompose(w).v; }

double Projector::star0_seminorm(const VelocityField& w) const { return l2_norm(project(w)); }

Decomposition decompose(const VelocityField& w) { return Projector(w.grid_ptr()).decompose(w); }
VelocityField project_EN(const VelocityField& w) { return Projector(w.grid_ptr()).project(w); }
double star0_seminorm(const VelocityField& w) { return Projector(w.grid_ptr()).star0_seminorm(w); }
VelocityField leray_initialize(const VelocityField& w) { return project_EN(w); }

}  // namespace macproj
