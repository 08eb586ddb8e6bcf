#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "macproj/fields.hpp"

namespace macproj {

using SpaceTimeVector = std::function<Vec3(double t, const Point& x)>;
using SpaceTimeScalar = std::function<double(double t, const Point& x)>;

/// Exact solution and matching forcing of the unit-viscosity, unit-density
/// Navier-Stokes equations on the unit box, with u = 0 on the boundary.
struct AnalyticProblem {
  std::string name;
  int dim = 2;
  SpaceTimeVector velocity;
  SpaceTimeScalar pressure;
  SpaceTimeVector forcing;
  /// u, p and f do not depend on t.
  bool stationary = false;
  /// Start the pressure from the exact p(0) instead of zero.
  bool exact_initial_pressure = false;

  VectorFunction velocity_at(double t) const {
    return [v = velocity, t](const Point& x) { return v(t, x); };
  }
  ScalarFunction pressure_at(double t) const {
    return [p = pressure, t](const Point& x) { return p(t, x); };
  }
};

class UnknownProblemError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Registered problems:
///   poly2d        stream function 50 (x(1-x)y(1-y))^2, decaying like e^{-t}
///   poly3d        curl of 50 g(x)g(y)g(z) (1,1,1), g(s) = s^2(1-s)^2, e^{-t}
///   trig2d        u = e^{-t} (sin^2(pi x) sin(2 pi y), -sin(2 pi x) sin^2(pi y))
///   hydrostatic2d u = 0, p = x - 1/2, f = grad p (a discrete fixed point)
///   hydrostatic3d the same in 3D
///   quiescent2d   u = 0, p = 0, f = 0
///   quiescent3d   the same in 3D
/// f = du/dt + div(u (x) u) - lap u + grad p in closed form.
AnalyticProblem mms_problem(const std::string& name);

std::vector<std::string> problem_names();

/// Constant body force with zero initial velocity (the solution is at rest
/// with a linear hydrostatic pressure).
AnalyticProblem body_force_problem(int dim, const Vec3& force);

}  // namespace macproj
