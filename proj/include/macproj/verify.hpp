#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "macproj/fields.hpp"
#include "macproj/problems.hpp"
#include "macproj/scheme.hpp"

namespace macproj {

struct PropertyCheck {
  std::string name;
  double max_residual = 0.0;
  double tolerance = 0.0;
  bool passed() const { return max_residual <= tolerance; }
};

struct PropertyReport {
  std::vector<PropertyCheck> checks;
  bool passed() const;
  const PropertyCheck& operator[](const std::string& name) const;
};

using ConvectionOperator = std::function<VelocityField(const VelocityField& a, const VelocityField& w)>;

struct PropertyOptions {
  int trials = 100;
  std::uint64_t seed = 20240611;
  /// Replaces convect_N in the skew-symmetry check (negative controls).
  ConvectionOperator convection;
  /// Include a trial with all-zero fields.
  bool zero_trial = true;
  double operator_tolerance = 1e-12;
  double projection_tolerance = 1e-10;
};

/// Randomized identity checks on one grid. Every residual is relative to the
/// Cauchy-Schwarz bound of the quantity it measures:
///   duality          |int grad p . v + int p div v| / (||p|| ||v||)
///   laplace_symmetry |int (-lap u).v - int (-lap v).u| / (||u||_1 ||v||_1)
///   laplace_energy   |int (-lap w).w - ||w||_1^2| / ||w||_1^2
///   skew             |b(a, w, w)| / (||a|| ||w||^2), a = P w'
///   idempotence      ||P P w - P w|| / ||w||
///   pythagoras       | ||w||^2 - ||P w||^2 - ||w - P w||^2 | / ||w||^2
///   gradient_kernel  |grad q|_{*,0} / ||grad q||
PropertyReport property_suite(const GridPtr& grid, const PropertyOptions& options = {});

/// Non-uniform box grid with 2..max_cells cells per axis, random extents
/// in [0.5, 2] and per-axis grading.
MacGrid random_grid(int dim, int max_cells, std::mt19937_64& rng);

/// Upwind convection, a fixture for the skew-symmetry negative control.
VelocityField upwind_convect(const VelocityField& a, const VelocityField& w);

class TranslateError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct TranslateRow {
  double tau = 0.0;
  double l2 = 0.0;     // int_0^{T-tau} ||u~(t+tau) - u~(t)||^2 dt
  double star0 = 0.0;  // the same in |.|_{*,0}^2
};

/// Exact sums over the piecewise-constant predicted velocity. Each tau must
/// be a multiple of dt with 0 <= tau < T.
std::vector<TranslateRow> translate_diagnostic(const Trajectory& traj, const std::vector<double>& taus);

struct StudyLevel {
  GridPtr grid;
  int steps = 0;
};

struct StudyRow {
  double h = 0.0;
  double dt = 0.0;
  double theta = 0.0;
  double l2l2_error = 0.0;
  double final_l2_error = 0.0;
  double l2h1_error = 0.0;
  double coupling = 0.0;
  /// Most negative energy residual relative to its step's largest term.
  double worst_energy_residual = 0.0;
};

struct StudyReport {
  std::string problem;
  std::vector<StudyRow> rows;
  /// l2l2_error[k+1] <= max_error_ratio * l2l2_error[k] for every k.
  bool error_decreasing = false;
  /// coupling[k+1] / coupling[k] within [0.4, 0.6] for every k.
  bool coupling_first_order = false;
  bool passed() const { return error_decreasing; }
};

class StudyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct StudyOptions {
  double horizon = 1.0;
  double max_error_ratio = 0.8;
  double coupling_low = 0.4;
  double coupling_high = 0.6;
  SchemeOptions scheme;
};

/// Runs every level (concurrently) and compares with the face means of the
/// exact solution. Needs at least 2 levels, given coarse to fine. A level
/// whose run fails throws StudyError naming it.
StudyReport convergence_study(const AnalyticProblem& problem, const std::vector<StudyLevel>& levels,
                              const StudyOptions& options = {});

/// Levels n0 * 2^k cells per axis with N0 * 2^k steps, k < count.
std::vector<StudyLevel> refinement_levels(int dim, int n0, int steps0, int count, double stretch = 0.0);

/// ||u - u~||_{L2 L2} on one grid for each step count.
std::vector<double> coupling_study(const AnalyticProblem& problem, const GridPtr& grid,
                                   const std::vector<int>& steps, const StudyOptions& options = {});

}  // namespace macproj
