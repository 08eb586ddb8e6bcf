#include "macproj/verify.hpp"

#include <algorithm>
#include <cmath>
#include <future>

#include "macproj/operators.hpp"
#include "macproj/projection.hpp"

namespace macproj {

namespace {

double ratio(double num, double den) { return den > 0.0 ? std::abs(num) / den : std::abs(num); }

PressureField random_pressure(const GridPtr& g, std::mt19937_64& rng, double scale) {
  std::uniform_real_distribution<double> u(-scale, scale);
  PressureField p(g);
  for (double& x : p.values()) x = u(rng);
  return p;
}

VelocityField random_velocity(const GridPtr& g, std::mt19937_64& rng, double scale) {
  std::uniform_real_distribution<double> u(-scale, scale);
  VelocityField v(g);
  for (double& x : v.values()) x = u(rng);
  v.zero_exterior();
  return v;
}

}  // namespace

bool PropertyReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const PropertyCheck& c) { return c.passed(); });
}

const PropertyCheck& PropertyReport::operator[](const std::string& name) const {
  for (const auto& c : checks) {
    if (c.name == name) return c;
  }
  throw std::out_of_range("no property check named " + name);
}

PropertyReport property_suite(const GridPtr& grid, const PropertyOptions& options) {
  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> log_scale(-3.0, 3.0);
  const Projector projector(grid, 1e-13, 50000);
  const ConvectionOperator convect = options.convection ? options.convection : ConvectionOperator(convect_N);

  double duality = 0, lap_sym = 0, lap_energy = 0, skew = 0, idem = 0, pyth = 0, kernel = 0;
  const int total = options.trials + (options.zero_trial ? 1 : 0);
  for (int trial = 0; trial < total; ++trial) {
    // Magnitudes span several decades so the residuals are checked for scale invariance.
    const bool zero = options.zero_trial && trial == options.trials;
    const double s = zero ? 0.0 : std::pow(10.0, log_scale(rng));
    const PressureField p = random_pressure(grid, rng, s);
    const VelocityField v = random_velocity(grid, rng, s);
    const VelocityField u = random_velocity(grid, rng, s);
    const VelocityField w = random_velocity(grid, rng, s);

    duality = std::max(duality, ratio(inner(grad_N(p), v) + inner(p, div_N(v)), l2_norm(p) * l2_norm(v)));

    const double nu = w1q_norm(u, 2), nv = w1q_norm(v, 2), nw = w1q_norm(w, 2);
    lap_sym = std::max(lap_sym, ratio(inner(laplace_N(u), v) - inner(laplace_N(v), u), nu * nv));
    lap_energy = std::max(lap_energy, ratio(-inner(laplace_N(w), w) - nw * nw, nw * nw));

    const VelocityField a = zero ? VelocityField(grid) : projector.project(v);
    const double nwl = l2_norm(w);
    skew = std::max(skew, ratio(inner(convect(a, w), w), l2_norm(a) * nwl * nwl));

    const VelocityField pw = zero ? VelocityField(grid) : projector.project(w);
    const VelocityField ppw = zero ? VelocityField(grid) : projector.project(pw);
    idem = std::max(idem, ratio(l2_norm(ppw - pw), nwl));
    const double rest = l2_norm(w - pw), npw = l2_norm(pw);
    pyth = std::max(pyth, ratio(nwl * nwl - npw * npw - rest * rest, nwl * nwl));

    const VelocityField gq = grad_N(p);
    const double star = zero ? 0.0 : projector.star0_seminorm(gq);
    kernel = std::max(kernel, ratio(star, l2_norm(gq)));
  }

  const double op = options.operator_tolerance, pr = options.projection_tolerance;
  PropertyReport r;
  r.checks = {{"duality", duality, op},        {"laplace_symmetry", lap_sym, op}, {"laplace_energy", lap_energy, op},
              {"skew_symmetry", skew, op},     {"idempotence", idem, pr},        {"pythagoras", pyth, pr},
              {"gradient_kernel", kernel, pr}};
  return r;
}

MacGrid random_grid(int dim, int max_cells, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> cells(2, max_cells);
  std::uniform_real_distribution<double> extent(0.5, 2.0);
  std::uniform_real_distribution<double> jitter(0.2, 1.0);
  std::vector<std::vector<double>> coords;
  for (int a = 0; a < dim; ++a) {
    const int n = cells(rng);
    std::vector<double> widths(n);
    for (double& w : widths) w = jitter(rng);
    double total = 0.0;
    for (double w : widths) total += w;
    const double len = extent(rng);
    std::vector<double> x(n + 1, 0.0);
    for (int k = 0; k < n; ++k) x[k + 1] = x[k] + widths[k] * len / total;
    x[n] = len;
    coords.push_back(std::move(x));
  }
  return MacGrid::build(std::move(coords));
}

VelocityField upwind_convect(const VelocityField& a, const VelocityField& w) {
  const MacGrid& g = a.grid();
  VelocityField out(a.grid_ptr());
  for (std::size_t f = 0; f < g.num_faces(); ++f) {
    if (g.is_exterior(f)) continue;
    const auto dual = g.dual_faces(g.face_direction(f));
    double s = 0.0;
    for (const auto& entry : g.dual_stencil(f)) {
      const DualFace& e = dual[entry.dual_face];
      const double flux_out = entry.sign * dual_flux(e, a);
      const std::size_t other = entry.sign > 0 ? e.upper : e.lower;
      const double w_other = (other == kNoFace || g.is_exterior(other)) ? 0.0 : w[other];
      s += flux_out * (flux_out > 0 ? w[f] : w_other);
    }
    out[f] = s / g.dual_volume(f);
  }
  return out;
}

std::vector<TranslateRow> translate_diagnostic(const Trajectory& traj, const std::vector<double>& taus) {
  const auto n_steps = static_cast<int>(traj.steps.size());
  const Projector projector(traj.grid, 1e-13, 50000);
  std::vector<TranslateRow> rows;
  for (double tau : taus) {
    const double m_real = tau / traj.dt;
    const long m = std::lround(m_real);
    if (tau < 0.0 || std::abs(m_real - static_cast<double>(m)) > 1e-9 * std::max(1.0, m_real)) {
      throw TranslateError("tau = " + std::to_string(tau) + " is not a multiple of dt = " + std::to_string(traj.dt));
    }
    if (m >= n_steps) throw TranslateError("tau = " + std::to_string(tau) + " is not below T");
    TranslateRow row;
    row.tau = tau;
    if (m > 0) {
      for (int n = 0; n + m < n_steps; ++n) {
        const VelocityField d = traj.steps[n + m].u_tilde - traj.steps[n].u_tilde;
        const double l2 = l2_norm(d);
        const double star = projector.star0_seminorm(d);
        row.l2 += traj.dt * l2 * l2;
        row.star0 += traj.dt * star * star;
      }
    }
    rows.push_back(row);
  }
  return rows;
}

namespace {

StudyRow measure(const AnalyticProblem& problem, const Trajectory& traj) {
  const MacGrid& g = *traj.grid;
  StudyRow row;
  row.h = g.h();
  row.dt = traj.dt;
  row.theta = g.theta();
  double l2 = 0.0, h1 = 0.0;
  for (std::size_t n = 0; n < traj.steps.size(); ++n) {
    const double t = (static_cast<double>(n) + 1.0) * traj.dt;
    const VelocityField e = traj.steps[n].u_tilde - fortin_interpolate(traj.grid, problem.velocity_at(t));
    const double el2 = l2_norm(e), eh1 = w1q_norm(e, 2);
    l2 += traj.dt * el2 * el2;
    h1 += traj.dt * eh1 * eh1;
  }
  row.l2l2_error = std::sqrt(l2);
  row.l2h1_error = std::sqrt(h1);
  row.final_l2_error = l2_norm(traj.final_u - fortin_interpolate(traj.grid, problem.velocity_at(traj.horizon)));
  row.coupling = trajectory_norms(traj).coupling_l2l2;
  for (const auto& d : traj.diagnostics) {
    row.worst_energy_residual = std::min(row.worst_energy_residual, d.energy_residual / std::max(d.energy_scale, 1e-300));
  }
  return row;
}

Trajectory run_level(const AnalyticProblem& problem, const GridPtr& grid, int steps, const StudyOptions& options) {
  ProjectionScheme scheme(grid, options.scheme);
  Trajectory traj = scheme.run(problem, options.horizon, steps);
  if (!traj.complete()) {
    throw StudyError("level with h = " + std::to_string(grid->h()) + ", N = " + std::to_string(steps) +
                     " failed: " + *traj.failure);
  }
  return traj;
}

}  // namespace

StudyReport convergence_study(const AnalyticProblem& problem, const std::vector<StudyLevel>& levels,
                              const StudyOptions& options) {
  if (levels.size() < 2) throw StudyError("a study needs at least 2 levels");
  std::vector<std::future<StudyRow>> jobs;
  for (const StudyLevel& level : levels) {
    jobs.push_back(std::async(std::launch::async, [&problem, &options, level] {
      return measure(problem, run_level(problem, level.grid, level.steps, options));
    }));
  }
  StudyReport report;
  report.problem = problem.name;
  for (auto& job : jobs) report.rows.push_back(job.get());

  report.error_decreasing = true;
  report.coupling_first_order = true;
  for (std::size_t k = 0; k + 1 < report.rows.size(); ++k) {
    const StudyRow& a = report.rows[k];
    const StudyRow& b = report.rows[k + 1];
    if (!(b.l2l2_error < a.l2l2_error && b.l2l2_error <= options.max_error_ratio * a.l2l2_error)) {
      report.error_decreasing = false;
    }
    const double c = b.coupling / a.coupling;
    if (!(c >= options.coupling_low && c <= options.coupling_high)) report.coupling_first_order = false;
  }
  return report;
}

std::vector<StudyLevel> refinement_levels(int dim, int n0, int steps0, int count, double stretch) {
  std::vector<StudyLevel> levels;
  for (int k = 0; k < count; ++k) {
    const int n = n0 << k;
    std::vector<std::vector<double>> coords;
    for (int a = 0; a < dim; ++a) coords.push_back(graded_coords(n, 1.0, stretch));
    levels.push_back({make_grid(MacGrid::build(std::move(coords))), steps0 << k});
  }
  return levels;
}

std::vector<double> coupling_study(const AnalyticProblem& problem, const GridPtr& grid, const std::vector<int>& steps,
                                   const StudyOptions& options) {
  std::vector<std::future<double>> jobs;
  for (int n : steps) {
    jobs.push_back(std::async(std::launch::async, [&, n] {
      return trajectory_norms(run_level(problem, grid, n, options)).coupling_l2l2;
    }));
  }
  std::vector<double> out;
  for (auto& job : jobs) out.push_back(job.get());
  return out;
}

}  // namespace macproj
