#include <doctest.h>

#include "macproj/verify.hpp"

using namespace macproj;

TEST_CASE("property suite on a uniform 4^3 grid") {
  const PropertyReport r = property_suite(make_grid(MacGrid::uniform(3, 4)));
  CHECK(r.passed());
  CHECK(r.checks.size() == 7);
  for (const auto& c : r.checks) {
    CAPTURE(c.name);
    CHECK(c.max_residual <= c.tolerance);
  }
  CHECK_THROWS_AS(r["nonexistent"], std::out_of_range);
}

TEST_CASE("zero trial alone gives exact zeros") {
  PropertyOptions opt;
  opt.trials = 0;
  const PropertyReport r = property_suite(make_grid(MacGrid::uniform(2, 5)), opt);
  for (const auto& c : r.checks) CHECK(c.max_residual == 0.0);
}

TEST_CASE("upwind convection fails the skew-symmetry check") {
  PropertyOptions opt;
  opt.trials = 5;
  opt.convection = upwind_convect;
  const PropertyReport r = property_suite(make_grid(MacGrid::uniform(2, 6)), opt);
  CHECK_FALSE(r["skew_symmetry"].passed());
  CHECK(r["duality"].passed());
  CHECK_FALSE(r.passed());
}

TEST_CASE("property suite is reproducible for a seed") {
  PropertyOptions opt;
  opt.trials = 4;
  const GridPtr g = make_grid(MacGrid::uniform(2, 5));
  const PropertyReport a = property_suite(g, opt), b = property_suite(g, opt);
  for (std::size_t k = 0; k < a.checks.size(); ++k) CHECK(a.checks[k].max_residual == b.checks[k].max_residual);
}

TEST_CASE("random grids") {
  std::mt19937_64 rng(17);
  for (int k = 0; k < 10; ++k) {
    const MacGrid g = random_grid(3, 6, rng);
    CHECK(g.dim() == 3);
    for (int a = 0; a < 3; ++a) {
      CHECK(g.cells_along(a) >= 2);
      CHECK(g.cells_along(a) <= 6);
    }
  }
}

TEST_CASE("translate diagnostic") {
  const GridPtr g = make_grid(MacGrid::uniform(2, 12));
  ProjectionScheme scheme(g);
  const Trajectory traj = scheme.run(mms_problem("poly2d"), 1.0, 16);
  REQUIRE(traj.complete());
  const double dt = traj.dt;
  const auto rows = translate_diagnostic(traj, {0.0, dt, 2 * dt, 4 * dt, 8 * dt, 15 * dt});
  REQUIRE(rows.size() == 6);
  CHECK(rows[0].l2 == 0.0);
  CHECK(rows[0].star0 == 0.0);
  for (const auto& r : rows) CHECK(r.star0 <= r.l2 + 1e-13);

  // tau = dt equals the directly summed step increments
  double direct = 0.0;
  for (std::size_t n = 0; n + 1 < traj.steps.size(); ++n) {
    const double d = l2_norm(traj.steps[n + 1].u_tilde - traj.steps[n].u_tilde);
    direct += dt * d * d;
  }
  CHECK(rows[1].l2 == doctest::Approx(direct).epsilon(1e-12));

  CHECK_THROWS_AS(translate_diagnostic(traj, {0.5 * dt}), TranslateError);
  CHECK_THROWS_AS(translate_diagnostic(traj, {1.0}), TranslateError);
  CHECK_THROWS_AS(translate_diagnostic(traj, {-dt}), TranslateError);
}

TEST_CASE("stationary trajectory has vanishing translates") {
  const GridPtr g = make_grid(MacGrid::uniform(2, 6));
  ProjectionScheme scheme(g);
  const Trajectory traj = scheme.run(mms_problem("quiescent2d"), 1.0, 8);
  for (const auto& r : translate_diagnostic(traj, {0.125, 0.25, 0.5})) {
    CHECK(r.l2 == 0.0);
    CHECK(r.star0 == 0.0);
  }
}

TEST_CASE("convergence study verdicts") {
  SUBCASE("manufactured solution") {
    const StudyReport r = convergence_study(mms_problem("poly2d"), refinement_levels(2, 6, 6, 3));
    REQUIRE(r.rows.size() == 3);
    CHECK(r.error_decreasing);
    CHECK(r.passed());
    CHECK(r.coupling_first_order);
    for (std::size_t k = 0; k + 1 < r.rows.size(); ++k) {
      CHECK(r.rows[k + 1].h == doctest::Approx(0.5 * r.rows[k].h));
      CHECK(r.rows[k + 1].dt == doctest::Approx(0.5 * r.rows[k].dt));
    }
  }
  SUBCASE("fixed point has errors at solver tolerance") {
    const StudyReport r = convergence_study(mms_problem("hydrostatic2d"), refinement_levels(2, 4, 2, 2));
    for (const auto& row : r.rows) CHECK(row.l2l2_error <= 1e-10);
  }
  SUBCASE("needs two levels") {
    CHECK_THROWS_AS(convergence_study(mms_problem("poly2d"), refinement_levels(2, 4, 4, 1)), StudyError);
  }
  SUBCASE("failing level is named") {
    StudyOptions opt;
    opt.scheme.max_iterations = 1;
    CHECK_THROWS_AS(convergence_study(mms_problem("poly2d"), refinement_levels(2, 8, 4, 2), opt), StudyError);
  }
}

TEST_CASE("coupling study on a fixed grid") {
  const auto c = coupling_study(mms_problem("poly2d"), make_grid(MacGrid::uniform(2, 12)), {8, 16, 32});
  REQUIRE(c.size() == 3);
  for (std::size_t k = 0; k + 1 < c.size(); ++k) {
    CHECK(c[k + 1] / c[k] >= 0.4);
    CHECK(c[k + 1] / c[k] <= 0.6);
  }
}
