#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>

#include "macproj/diagnostics.hpp"
#include "macproj/fields.hpp"
#include "macproj/linalg.hpp"
#include "macproj/operators.hpp"
#include "macproj/problems.hpp"
#include "macproj/projection.hpp"

namespace macproj {

struct SchemeOptions {
  double prediction_tolerance = 1e-10;
  double poisson_tolerance = 1e-10;
  int max_iterations = 20000;
  /// Leray-project u^0 when max |div u^0| exceeds this times max|u^0| / h.
  double init_divergence_tolerance = 1e-10;
};

class SchemeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Level n of the incremental projection scheme. `u_tilde` and `p_prev`
/// hold the predicted velocity and pressure of the previous step once one
/// has been taken.
struct SchemeState {
  int n = 0;
  double t = 0.0;
  double dt = 0.0;
  VelocityField u;
  PressureField p;
  std::optional<VelocityField> u_tilde;
  std::optional<PressureField> p_prev;
};

struct PredictionResult {
  VelocityField u_tilde;
  SolverStats stats;
  /// rhs - lhs of the linearized-problem energy estimate.
  double estimate_residual = 0.0;
};

struct CorrectionResult {
  VelocityField u;
  PressureField p;
  PressureField psi;  // p^{n+1} - p^n
  SolverStats stats;
};

using StepObserver = std::function<void(const SchemeState&, const StepDiagnostics&)>;

/// First-order incremental projection on a MAC grid:
///   prediction  (u~ - u^n)/dt + C(u^n) u~ - lap u~ + grad p^n = f^{n+1},  u~ = 0 on walls
///   correction  (u^{n+1} - u~)/dt + grad (p^{n+1} - p^n) = 0,  div u^{n+1} = 0,
///               sum |K| p^{n+1}_K = 0
/// with unit density and viscosity.
class ProjectionScheme {
 public:
  explicit ProjectionScheme(GridPtr grid, SchemeOptions options = {});

  const MacGrid& grid() const { return *grid_; }
  const SchemeOptions& options() const { return options_; }

  /// u^0 = face means of u0 (projected when not discretely divergence-free),
  /// p^0 = 0 or the cell means of p0.
  SchemeState initialize(const VectorFunction& u0, double dt, const ScalarFunction* p0 = nullptr,
                         double* correction = nullptr) const;

  /// Face means of f at the step midpoint t + dt/2.
  VelocityField forcing(const SpaceTimeVector& f, double t, double dt) const;

  PredictionResult prediction(const SchemeState& state, const VelocityField& f_next);
  CorrectionResult correction(const SchemeState& state, const VelocityField& u_tilde) const;
  std::pair<SchemeState, StepDiagnostics> step(const SchemeState& state, const VelocityField& f_next);

  /// N steps of size T/N. Solver failures end the run early with
  /// Trajectory::failure set.
  Trajectory run(const VectorFunction& u0, const SpaceTimeVector& f, double horizon, int steps,
                 const ScalarFunction* p0 = nullptr, const StepObserver& observer = {});
  Trajectory run(const AnalyticProblem& problem, double horizon, int steps, const StepObserver& observer = {});

 private:
  GridPtr grid_;
  SchemeOptions options_;
  std::shared_ptr<OperatorWorkspace> ops_;
  Projector projector_;
};

}  // namespace macproj
