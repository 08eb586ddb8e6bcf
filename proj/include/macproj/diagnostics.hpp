#pragma once

#include <optional>

namespace macproj {

/// Per-step record. `energy_residual` is the right-hand side minus the
/// left-hand side of the step energy inequality; it must be >= -tol.
struct StepDiagnostics {
  int n = 0;  // index of the new level, n+1
  double t = 0.0;
  double kinetic_energy = 0.0;  // 0.5 ||u^{n+1}||^2
  double dissipation = 0.0;     // ||u~^{n+1}||_{1,2}^2
  double grad_p_norm = 0.0;     // ||grad p^{n+1}||
  double coupling_norm = 0.0;   // ||u~^{n+1} - u^n||
  double div_max = 0.0;         // max_K |div u^{n+1}|
  double energy_residual = 0.0;
  double energy_scale = 0.0;  // largest term magnitude of the inequality
  /// rhs - lhs of the prediction-step estimate (linearized problem).
  double prediction_residual = 0.0;
  /// Relative L2 residual of the combined momentum identity, from the
  /// second step on.
  std::optional<double> combined_residual;
  double pressure_mean = 0.0;  // sum |K| p_K^{n+1}
  int pred_iters = 0;
  int corr_iters = 0;
  double pred_residual = 0.0;
  double corr_residual = 0.0;
};

}  // namespace macproj
