#include "macproj/problems.hpp"

#include <cmath>
#include <memory>
#include <numbers>

namespace macproj {

namespace {

constexpr double kPi = std::numbers::pi;

// One-dimensional factor with derivatives of any order used here.
using Factor = double (*)(int order, double s);

// g(s) = s^2 (1 - s)^2 = s^2 - 2 s^3 + s^4
double poly_bump(int order, double s) {
  switch (order) {
    case 0: return s * s * (1.0 - s) * (1.0 - s);
    case 1: return 2.0 * s - 6.0 * s * s + 4.0 * s * s * s;
    case 2: return 2.0 - 12.0 * s + 12.0 * s * s;
    case 3: return -12.0 + 24.0 * s;
    case 4: return 24.0;
    default: return 0.0;
  }
}

// sin^2(pi s) = (1 - cos(2 pi s)) / 2
double sin_squared(int order, double s) {
  const double w = 2.0 * kPi;
  if (order == 0) return std::sin(kPi * s) * std::sin(kPi * s);
  const double amp = -0.5 * std::pow(w, order);
  switch (order % 4) {
    case 0: return amp * std::cos(w * s);
    case 1: return -amp * std::sin(w * s);
    case 2: return -amp * std::cos(w * s);
    default: return amp * std::sin(w * s);
  }
}

// sin(2 pi s)
double sin_double(int order, double s) {
  const double w = 2.0 * kPi;
  const double amp = std::pow(w, order);
  switch (order % 4) {
    case 0: return amp * std::sin(w * s);
    case 1: return amp * std::cos(w * s);
    case 2: return -amp * std::sin(w * s);
    default: return -amp * std::cos(w * s);
  }
}

// cos(pi s)
double cos_single(int order, double s) {
  const double amp = std::pow(kPi, order);
  switch (order % 4) {
    case 0: return amp * std::cos(kPi * s);
    case 1: return -amp * std::sin(kPi * s);
    case 2: return -amp * std::cos(kPi * s);
    default: return amp * std::sin(kPi * s);
  }
}

// s - 1/2
double centered_linear(int order, double s) {
  if (order == 0) return s - 0.5;
  return order == 1 ? 1.0 : 0.0;
}

double one(int order, double) { return order == 0 ? 1.0 : 0.0; }

struct Term {
  double coef;
  std::array<Factor, 3> factor;
  std::array<int, 3> order;
};

using Separable = std::vector<Term>;

double eval(const Separable& s, const Point& x, const std::array<int, 3>& extra = {0, 0, 0}) {
  double sum = 0.0;
  for (const Term& t : s) {
    double v = t.coef;
    for (int a = 0; a < 3; ++a) v *= t.factor[a](t.order[a] + extra[a], x[a]);
    sum += v;
  }
  return sum;
}

// u(t, x) = e^{-t} U(x), p(t, x) = e^{-t} P(x) (or time-independent).
struct SeparableFlow {
  int dim = 2;
  std::array<Separable, 3> velocity;
  Separable pressure;
  bool decaying = true;

  double decay(double t) const { return decaying ? std::exp(-t) : 1.0; }

  Vec3 u(double t, const Point& x) const {
    Vec3 out{0.0, 0.0, 0.0};
    for (int i = 0; i < dim; ++i) out[i] = decay(t) * eval(velocity[i], x);
    return out;
  }

  double p(double t, const Point& x) const { return decay(t) * eval(pressure, x); }

  Vec3 f(double t, const Point& x) const {
    const double e = decay(t);
    Vec3 uu{0.0, 0.0, 0.0};
    for (int i = 0; i < dim; ++i) uu[i] = e * eval(velocity[i], x);
    Vec3 out{0.0, 0.0, 0.0};
    for (int i = 0; i < dim; ++i) {
      std::array<int, 3> d{0, 0, 0};
      double conv = 0.0, lap = 0.0;
      for (int j = 0; j < dim; ++j) {
        d = {0, 0, 0};
        d[j] = 1;
        conv += uu[j] * e * eval(velocity[i], x, d);
        d[j] = 2;
        lap += e * eval(velocity[i], x, d);
      }
      d = {0, 0, 0};
      d[i] = 1;
      const double dudt = decaying ? -uu[i] : 0.0;
      out[i] = dudt + conv - lap + e * eval(pressure, x, d);
    }
    return out;
  }
};

AnalyticProblem from_flow(std::string name, std::shared_ptr<const SeparableFlow> flow) {
  AnalyticProblem p;
  p.name = std::move(name);
  p.dim = flow->dim;
  p.stationary = !flow->decaying;
  p.velocity = [flow](double t, const Point& x) { return flow->u(t, x); };
  p.pressure = [flow](double t, const Point& x) { return flow->p(t, x); };
  p.forcing = [flow](double t, const Point& x) { return flow->f(t, x); };
  return p;
}

constexpr double kPolyAmplitude = 50.0;

SeparableFlow poly2d() {
  SeparableFlow s;
  s.dim = 2;
  const double a = kPolyAmplitude;
  s.velocity[0] = {{a, {poly_bump, poly_bump, one}, {0, 1, 0}}};
  s.velocity[1] = {{-a, {poly_bump, poly_bump, one}, {1, 0, 0}}};
  s.pressure = {{1.0, {centered_linear, centered_linear, one}, {0, 0, 0}}};
  return s;
}

SeparableFlow poly3d() {
  SeparableFlow s;
  s.dim = 3;
  const double a = kPolyAmplitude;
  const std::array<Factor, 3> g{poly_bump, poly_bump, poly_bump};
  s.velocity[0] = {{a, g, {0, 1, 0}}, {-a, g, {0, 0, 1}}};
  s.velocity[1] = {{a, g, {0, 0, 1}}, {-a, g, {1, 0, 0}}};
  s.velocity[2] = {{a, g, {1, 0, 0}}, {-a, g, {0, 1, 0}}};
  s.pressure = {{1.0, {centered_linear, centered_linear, centered_linear}, {0, 0, 0}}};
  return s;
}

SeparableFlow trig2d() {
  SeparableFlow s;
  s.dim = 2;
  s.velocity[0] = {{1.0, {sin_squared, sin_double, one}, {0, 0, 0}}};
  s.velocity[1] = {{-1.0, {sin_double, sin_squared, one}, {0, 0, 0}}};
  s.pressure = {{1.0, {cos_single, cos_single, one}, {0, 0, 0}}};
  return s;
}

SeparableFlow hydrostatic(int dim) {
  SeparableFlow s;
  s.dim = dim;
  s.decaying = false;
  s.pressure = {{1.0, {centered_linear, one, one}, {0, 0, 0}}};
  return s;
}

SeparableFlow quiescent(int dim) {
  SeparableFlow s;
  s.dim = dim;
  s.decaying = false;
  return s;
}

}  // namespace

AnalyticProblem mms_problem(const std::string& name) {
  auto make = [&](SeparableFlow f) { return from_flow(name, std::make_shared<const SeparableFlow>(std::move(f))); };
  if (name == "poly2d") return make(poly2d());
  if (name == "poly3d") return make(poly3d());
  if (name == "trig2d") return make(trig2d());
  if (name == "hydrostatic2d" || name == "hydrostatic3d") {
    AnalyticProblem p = make(hydrostatic(name == "hydrostatic2d" ? 2 : 3));
    p.exact_initial_pressure = true;
    return p;
  }
  if (name == "quiescent2d") return make(quiescent(2));
  if (name == "quiescent3d") return make(quiescent(3));
  throw UnknownProblemError("unknown problem '" + name + "'");
}

std::vector<std::string> problem_names() {
  return {"poly2d", "poly3d", "trig2d", "hydrostatic2d", "hydrostatic3d", "quiescent2d", "quiescent3d"};
}

AnalyticProblem body_force_problem(int dim, const Vec3& force) {
  AnalyticProblem p;
  p.name = "body_force";
  p.dim = dim;
  p.stationary = true;
  p.velocity = [](double, const Point&) { return Vec3{0.0, 0.0, 0.0}; };
  p.pressure = [force, dim](double, const Point& x) {
    double s = 0.0;
    for (int a = 0; a < dim; ++a) s += force[a] * (x[a] - 0.5);
    return s;
  };
  p.forcing = [force, dim](double, const Point&) {
    Vec3 f{0.0, 0.0, 0.0};
    for (int a = 0; a < dim; ++a) f[a] = force[a];
    return f;
  };
  return p;
}

}  // namespace macproj
