#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "macproj/fields.hpp"
#include "macproj/operators.hpp"
#include "macproj/problems.hpp"

using namespace macproj;

namespace {

GridPtr small() { return make_grid(MacGrid::build({{0.0, 1.0, 3.0}, {0.0, 2.0, 3.0}})); }

double max_abs(const PressureField& p) {
  double m = 0.0;
  for (double v : p.values()) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace

TEST_CASE("measure-weighted inner products") {
  const GridPtr g = small();
  PressureField p(g, {1.0, 2.0, 3.0, 4.0});
  // volumes 2, 4, 1, 2
  CHECK(inner(p, p) == doctest::Approx(2 * 1 + 4 * 4 + 1 * 9 + 2 * 16));
  CHECK(p.integral() == doctest::Approx(2 + 8 + 3 + 8));
  p.remove_mean();
  CHECK(std::abs(p.integral()) < 1e-14);

  VelocityField u(g);
  u[g->face_index(0, {1, 0, 0})] = 2.0;  // dual volume 3
  u[g->face_index(1, {1, 1, 0})] = 1.0;  // dual volume 2 * 1.5
  CHECK(inner(u, u) == doctest::Approx(4.0 * 3.0 + 3.0));
  CHECK(l2_norm(u) == doctest::Approx(std::sqrt(15.0)));
}

TEST_CASE("field arithmetic") {
  const GridPtr g = small();
  std::mt19937_64 rng(1);
  const VelocityField a = testing::random_velocity(g, rng), b = testing::random_velocity(g, rng);
  const VelocityField c = a + 2.0 * b - a;
  for (std::size_t f = 0; f < c.size(); ++f) CHECK(c[f] == doctest::Approx(2.0 * b[f]));
  CHECK(c.exterior_is_zero());
  VelocityField d = a;
  d[0] = 1.0;
  CHECK_FALSE(d.exterior_is_zero());
  d.zero_exterior();
  CHECK(d.exterior_is_zero());
}

TEST_CASE("interpolation is exact for low-degree polynomials") {
  const GridPtr g = make_grid(MacGrid::build({graded_coords(4, 1.0, 0.5), graded_coords(3, 2.0, 0.2)}));
  // cell mean of x^2 y^3 over [a,b]x[c,d]
  const PressureField q = cell_average(g, [](const Point& x) { return x[0] * x[0] * std::pow(x[1], 3); });
  for (std::size_t c = 0; c < g->num_cells(); ++c) {
    const auto k = g->cell_multi(c);
    const double a = g->coords(0)[k[0]], b = g->coords(0)[k[0] + 1];
    const double cy = g->coords(1)[k[1]], d = g->coords(1)[k[1] + 1];
    const double exact = (std::pow(b, 3) - std::pow(a, 3)) / 3 * (std::pow(d, 4) - std::pow(cy, 4)) / 4 /
                         ((b - a) * (d - cy));
    CHECK(q[c] == doctest::Approx(exact).epsilon(1e-13));
  }
  // face means of a linear field are its values at face centres
  const VelocityField u = fortin_interpolate(g, [](const Point& x) { return Vec3{1.0 + x[1], 2.0 - x[0], 0.0}; });
  for (std::size_t f = 0; f < g->num_faces(); ++f) {
    if (g->is_exterior(f)) {
      CHECK(u[f] == 0.0);
      continue;
    }
    const Point x = g->face_center(f);
    const double expected = g->face_direction(f) == 0 ? 1.0 + x[1] : 2.0 - x[0];
    CHECK(u[f] == doctest::Approx(expected).epsilon(1e-14));
  }
}

TEST_CASE("Fortin interpolation preserves zero divergence") {
  for (const std::string name : {"poly2d", "trig2d", "poly3d"}) {
    const AnalyticProblem prob = mms_problem(name);
    const int n = prob.dim == 2 ? 12 : 6;
    std::vector<std::vector<double>> coords;
    for (int a = 0; a < prob.dim; ++a) coords.push_back(graded_coords(n + a, 1.0, 0.4));
    const GridPtr g = make_grid(MacGrid::build(std::move(coords)));
    const VelocityField u = fortin_interpolate(g, prob.velocity_at(0.25));
    const double scale = l2_norm(u) / g->h();
    CAPTURE(name);
    CHECK(max_abs(div_N(u)) <= 1e-12 * scale);
  }
}

TEST_CASE("discrete W1q norms") {
  const GridPtr g = small();
  VelocityField u(g);
  const std::size_t f = g->face_index(0, {1, 0, 0});
  u[f] = 1.0;
  // Dual faces of f: along x to the two wall faces (|eps| = 2, d = 1 and 2),
  // along y to the wall (|eps| = 1.5, d = 1) and to the face above (|eps| = 1.5, d = 1.5).
  const double q2 = 2.0 / 1.0 + 2.0 / 2.0 + 1.5 / 1.0 + 1.5 / 1.5;
  CHECK(w1q_norm(u, 2) == doctest::Approx(std::sqrt(q2)));
  const double q1 = 2.0 + 2.0 + 1.5 + 1.5;
  CHECK(w1q_norm(u, 1) == doctest::Approx(q1));
  const double q3 = 2.0 / 1.0 + 2.0 / 4.0 + 1.5 / 1.0 + 1.5 / 2.25;
  CHECK(w1q_norm(u, 3) == doctest::Approx(std::cbrt(q3)));
  CHECK_THROWS_AS(w1q_norm(u, 0), std::invalid_argument);
  CHECK(w1q_norm(VelocityField(g), 2) == 0.0);
}

TEST_CASE("w1q norm of a random field is a norm") {
  const GridPtr g = make_grid(MacGrid::uniform(3, 4));
  std::mt19937_64 rng(4);
  const VelocityField a = testing::random_velocity(g, rng), b = testing::random_velocity(g, rng);
  CHECK(w1q_norm(a + b, 2) <= w1q_norm(a, 2) + w1q_norm(b, 2) + 1e-14);
  CHECK(w1q_norm(3.0 * a, 2) == doctest::Approx(3.0 * w1q_norm(a, 2)));
}

TEST_CASE("trajectory norms") {
  const GridPtr g = small();
  Trajectory traj;
  traj.grid = g;
  traj.dt = 0.5;
  VelocityField u(g), ut(g);
  u[g->face_index(0, {1, 0, 0})] = 1.0;
  ut[g->face_index(0, {1, 0, 0})] = 3.0;
  traj.steps.push_back({0.0, u, ut, PressureField(g)});
  traj.steps.push_back({0.5, ut, ut, PressureField(g)});
  const TrajectoryNorms n = trajectory_norms(traj);
  CHECK(n.corrected_linf_l2 == doctest::Approx(3.0 * std::sqrt(3.0)));
  CHECK(n.coupling_l2l2 == doctest::Approx(std::sqrt(0.5 * 4.0 * 3.0)));
  CHECK(n.predicted_h1 == doctest::Approx(std::sqrt(2 * 0.5 * 9.0) * w1q_norm(u, 2)));
}
