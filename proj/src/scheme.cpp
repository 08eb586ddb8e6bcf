#include "macproj/scheme.hpp"

#include <algorithm>
#include <cmath>

#include "macproj/parallel.hpp"

namespace macproj {

ProjectionScheme::ProjectionScheme(GridPtr grid, SchemeOptions options)
    : grid_(std::move(grid)),
      options_(options),
      ops_(std::make_shared<OperatorWorkspace>(grid_)),
      projector_(ops_, options.poisson_tolerance, options.max_iterations) {}

SchemeState ProjectionScheme::initialize(const VectorFunction& u0, double dt, const ScalarFunction* p0,
                                         double* correction) const {
  if (!(dt > 0.0)) throw SchemeError("time step must be positive");
  SchemeState s;
  s.dt = dt;
  s.u = fortin_interpolate(grid_, u0);
  s.p = p0 ? cell_average(grid_, *p0) : PressureField(grid_);
  s.p.remove_mean();

  const double umax = par::max_abs(s.u.values());
  const double divmax = par::max_abs(div_N(s.u).values());
  double corr = 0.0;
  if (divmax > options_.init_divergence_tolerance * umax / grid_->h()) {
    VelocityField projected = s.u - grad_N(projector_.potential_of(s.u, 1.0, nullptr, false));
    projected.zero_exterior();
    corr = l2_norm(s.u - projected);
    s.u = std::move(projected);
  }
  if (correction) *correction = corr;
  return s;
}

VelocityField ProjectionScheme::forcing(const SpaceTimeVector& f, double t, double dt) const {
  const double tm = t + 0.5 * dt;
  return fortin_interpolate(grid_, [&](const Point& x) { return f(tm, x); });
}

PredictionResult ProjectionScheme::prediction(const SchemeState& state, const VelocityField& f_next) {
  const MacGrid& g = *grid_;
  const double alpha = 1.0 / state.dt;
  const VelocityField grad_p = grad_N(state.p);

  SparseSystem sys;
  sys.matrix = ops_->momentum_matrix(state.u, alpha);
  sys.rhs.assign(g.num_faces(), 0.0);
  for (std::size_t f = 0; f < g.num_faces(); ++f) {
    if (g.is_exterior(f)) continue;
    sys.rhs[f] = g.dual_volume(f) * (alpha * state.u[f] - grad_p[f] + f_next[f]);
  }
  sys.kind = SolverKind::kBiCGStab;
  sys.tolerance = options_.prediction_tolerance;
  sys.max_iterations = options_.max_iterations;
  sys.initial_guess.assign(state.u.values().begin(), state.u.values().end());

  SolveResult res;
  try {
    res = solve_nonsymmetric(sys);
  } catch (const SolverError& e) {
    const int spent = e.stats().iterations;
    res = solve_gmres(sys);
    res.stats.iterations += spent;
  }

  PredictionResult out;
  out.u_tilde = VelocityField(grid_, std::move(res.x));
  out.u_tilde.zero_exterior();
  out.stats = res.stats;

  const VelocityField& ut = out.u_tilde;
  const double lhs = 0.5 * alpha * (inner(ut, ut) - inner(state.u, state.u) + inner(ut - state.u, ut - state.u)) -
                     inner(state.p, div_N(ut)) + std::pow(w1q_norm(ut, 2), 2);
  out.estimate_residual = inner(f_next, ut) - lhs;
  return out;
}

CorrectionResult ProjectionScheme::correction(const SchemeState& state, const VelocityField& u_tilde) const {
  CorrectionResult out;
  out.psi = projector_.potential_of(u_tilde, 1.0 / state.dt, &out.stats, false);
  out.u = u_tilde - state.dt * grad_N(out.psi);
  out.u.zero_exterior();
  out.p = state.p + out.psi;
  out.p.remove_mean();

  const double div_max = par::max_abs(div_N(out.u).values());
  if (div_max > 10.0 * options_.poisson_tolerance) {
    throw SchemeError("corrected velocity has divergence " + std::to_string(div_max));
  }
  return out;
}

std::pair<SchemeState, StepDiagnostics> ProjectionScheme::step(const SchemeState& state,
                                                               const VelocityField& f_next) {
  const double dt = state.dt;
  PredictionResult pred = prediction(state, f_next);
  CorrectionResult corr = correction(state, pred.u_tilde);
  const VelocityField& ut = pred.u_tilde;

  SchemeState next;
  next.n = state.n + 1;
  next.t = (state.n + 1) * dt;
  next.dt = dt;
  next.u = corr.u;
  next.p = corr.p;
  next.u_tilde = ut;
  next.p_prev = state.p;

  StepDiagnostics d;
  d.n = next.n;
  d.t = next.t;
  const double u_new2 = inner(next.u, next.u);
  const double u_old2 = inner(state.u, state.u);
  const double gp_new = l2_norm(grad_N(next.p));
  const double gp_old = l2_norm(grad_N(state.p));
  const double coupling = l2_norm(ut - state.u);
  const double h1 = w1q_norm(ut, 2);
  d.kinetic_energy = 0.5 * u_new2;
  d.dissipation = h1 * h1;
  d.grad_p_norm = gp_new;
  d.coupling_norm = coupling;
  d.div_max = par::max_abs(div_N(next.u).values());

  const double t1 = (u_new2 - u_old2) / (2.0 * dt);
  const double t2 = 0.5 * dt * (gp_new * gp_new - gp_old * gp_old);
  const double t3 = coupling * coupling / (2.0 * dt);
  const double t4 = d.dissipation;
  const double work = inner(f_next, ut);
  d.energy_residual = work - (t1 + t2 + t3 + t4);
  d.energy_scale = std::max({std::abs(t1), std::abs(t2), std::abs(t3), std::abs(t4), std::abs(work)});
  d.prediction_residual = pred.estimate_residual;
  d.pressure_mean = next.p.integral();

  if (state.u_tilde && state.p_prev) {
    // Prediction plus the previous correction:
    // (u~^{n+1} - u~^n)/dt + C(u^n) u~^{n+1} + grad(2p^n - p^{n-1}) - lap u~^{n+1} = f^{n+1}
    const VelocityField time_term = (1.0 / dt) * (ut - *state.u_tilde);
    const VelocityField conv = convect_N(state.u, ut);
    const VelocityField grad_term = grad_N(2.0 * state.p - *state.p_prev);
    const VelocityField lap = laplace_N(ut);
    VelocityField res = time_term + conv + grad_term - lap - f_next;
    res.zero_exterior();
    VelocityField f_interior = f_next;
    f_interior.zero_exterior();
    const double scale = std::max({l2_norm(time_term), l2_norm(conv), l2_norm(grad_term), l2_norm(lap),
                                   l2_norm(f_interior), 1e-300});
    d.combined_residual = l2_norm(res) / scale;
  }

  d.pred_iters = pred.stats.iterations;
  d.corr_iters = corr.stats.iterations;
  d.pred_residual = pred.stats.residual;
  d.corr_residual = corr.stats.residual;
  return {std::move(next), d};
}

Trajectory ProjectionScheme::run(const VectorFunction& u0, const SpaceTimeVector& f, double horizon, int steps,
                                 const ScalarFunction* p0, const StepObserver& observer) {
  if (steps < 1) throw SchemeError("number of steps must be at least 1");
  if (!(horizon > 0.0)) throw SchemeError("time horizon must be positive");
  Trajectory traj;
  traj.grid = grid_;
  traj.dt = horizon / steps;
  traj.horizon = horizon;
  SchemeState state = initialize(u0, traj.dt, p0, &traj.init_correction);
  traj.steps.reserve(static_cast<std::size_t>(steps));
  for (int n = 0; n < steps; ++n) {
    try {
      const VelocityField f_next = forcing(f, n * traj.dt, traj.dt);
      auto [next, diag] = step(state, f_next);
      traj.steps.push_back({n * traj.dt, state.u, *next.u_tilde, state.p});
      traj.diagnostics.push_back(diag);
      if (observer) observer(next, diag);
      state = std::move(next);
    } catch (const std::runtime_error& e) {
      traj.failure = "step " + std::to_string(n + 1) + ": " + e.what();
      break;
    }
  }
  traj.final_u = state.u;
  traj.final_p = state.p;
  return traj;
}

Trajectory ProjectionScheme::run(const AnalyticProblem& problem, double horizon, int steps,
                                 const StepObserver& observer) {
  if (problem.dim != grid_->dim()) throw SchemeError("problem and grid dimensions differ");
  const ScalarFunction p0 = problem.pressure_at(0.0);
  return run(problem.velocity_at(0.0), problem.forcing, horizon, steps,
             problem.exact_initial_pressure ? &p0 : nullptr, observer);
}

}  // namespace macproj
