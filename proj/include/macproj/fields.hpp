#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "macproj/diagnostics.hpp"
#include "macproj/grid.hpp"

namespace macproj {

using GridPtr = std::shared_ptr<const MacGrid>;
using Vec3 = std::array<double, 3>;
using ScalarFunction = std::function<double(const Point&)>;
using VectorFunction = std::function<Vec3(const Point&)>;

inline GridPtr make_grid(MacGrid g) { return std::make_shared<const MacGrid>(std::move(g)); }

/// Piecewise constant on primal cells.
class PressureField {
 public:
  PressureField() = default;
  explicit PressureField(GridPtr grid);
  PressureField(GridPtr grid, std::vector<double> values);

  const MacGrid& grid() const { return *grid_; }
  const GridPtr& grid_ptr() const { return grid_; }
  std::size_t size() const { return values_.size(); }
  double& operator[](std::size_t c) { return values_[c]; }
  double operator[](std::size_t c) const { return values_[c]; }
  std::span<double> values() { return values_; }
  std::span<const double> values() const { return values_; }

  /// Sum over cells of |K| p_K.
  double integral() const;
  /// Shift by a constant so that integral() == 0.
  void remove_mean();

  PressureField& operator+=(const PressureField& o);
  PressureField& operator-=(const PressureField& o);
  PressureField& operator*=(double s);

 private:
  GridPtr grid_;
  std::vector<double> values_;
};

/// One value per face; component i lives on faces normal to e_i. Exterior
/// faces are kept at zero (no-slip space).
class VelocityField {
 public:
  VelocityField() = default;
  explicit VelocityField(GridPtr grid);
  VelocityField(GridPtr grid, std::vector<double> values);

  const MacGrid& grid() const { return *grid_; }
  const GridPtr& grid_ptr() const { return grid_; }
  std::size_t size() const { return values_.size(); }
  double& operator[](std::size_t f) { return values_[f]; }
  double operator[](std::size_t f) const { return values_[f]; }
  std::span<double> values() { return values_; }
  std::span<const double> values() const { return values_; }
  std::span<const double> component(int dir) const;

  void zero_exterior();
  bool exterior_is_zero() const;

  VelocityField& operator+=(const VelocityField& o);
  VelocityField& operator-=(const VelocityField& o);
  VelocityField& operator*=(double s);

 private:
  GridPtr grid_;
  std::vector<double> values_;
};

PressureField operator+(PressureField a, const PressureField& b);
PressureField operator-(PressureField a, const PressureField& b);
PressureField operator*(double s, PressureField a);
VelocityField operator+(VelocityField a, const VelocityField& b);
VelocityField operator-(VelocityField a, const VelocityField& b);
VelocityField operator*(double s, VelocityField a);

/// Mean of each component over its faces (3-point Gauss per tangential
/// axis). Exterior faces are set to zero.
VelocityField fortin_interpolate(const GridPtr& grid, const VectorFunction& v);

/// Mean of q over each cell (3-point Gauss per axis).
PressureField cell_average(const GridPtr& grid, const ScalarFunction& q);

/// Measure-weighted inner products: |K| for cells, |D_sigma| for faces.
double inner(const PressureField& p, const PressureField& q);
double inner(const VelocityField& u, const VelocityField& v);

double l2_norm(const PressureField& p);
double l2_norm(const VelocityField& u);

/// Discrete W^{1,q}_0 norm: jumps across interior dual faces plus the wall
/// terms, weighted |eps| / d_eps^(q-1). Throws std::invalid_argument for q < 1.
double w1q_norm(const VelocityField& v, int q);

/// Piecewise-constant-in-time record of a run: step n covers (t^n, t^n+dt]
/// and carries u^n, the predicted velocity at t^{n+1} and p^n.
struct Snapshot {
  double t = 0.0;
  VelocityField u;
  VelocityField u_tilde;
  PressureField p;
};

struct Trajectory {
  GridPtr grid;
  double dt = 0.0;
  double horizon = 0.0;
  std::vector<Snapshot> steps;
  VelocityField final_u;
  PressureField final_p;
  std::vector<StepDiagnostics> diagnostics;
  /// L2 size of the Leray correction applied at initialization.
  double init_correction = 0.0;
  /// Set when the run stopped early; `steps` then holds the completed part.
  std::optional<std::string> failure;

  bool complete() const { return !failure.has_value(); }
};

struct TrajectoryNorms {
  /// sqrt(sum dt ||u~^{n+1}||_{1,2}^2)
  double predicted_h1 = 0.0;
  /// max_n ||u^n||, n = 0..N-1
  double corrected_linf_l2 = 0.0;
  /// sqrt(sum dt ||u^n - u~^{n+1}||^2)
  double coupling_l2l2 = 0.0;
};

TrajectoryNorms trajectory_norms(const Trajectory& traj);

}  // namespace macproj
