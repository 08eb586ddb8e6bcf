#include <doctest.h>

#include "dense_oracle.hpp"
#include "helpers.hpp"
#include "macproj/operators.hpp"
#include "macproj/projection.hpp"

using namespace macproj;

namespace {

using testing::DenseKernel;

GridPtr grid5() { return make_grid(MacGrid::build({{0.0, 0.1, 0.35, 0.5, 0.8, 1.0}, {0.0, 0.3, 0.4, 0.7, 0.75, 1.2}})); }

}  // namespace

TEST_CASE("kernel dimension of the 5x5 divergence") {
  const DenseKernel k(grid5());
  // 40 interior faces, 25 cells, divergence of rank 24
  CHECK(k.interior.size() == 40);
  CHECK(k.Z.cols() == 16);
}

TEST_CASE("projection and star-0 seminorm against the dense basis oracle") {
  const GridPtr g = grid5();
  const DenseKernel oracle(g);
  const Projector proj(g, 1e-13);
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 10; ++trial) {
    const VelocityField w = testing::random_velocity(g, rng);
    const VelocityField pw = proj.project(w);
    const Eigen::VectorXd expected = oracle.project(w);
    CHECK((oracle.restrict(pw) - expected).norm() <= 1e-10 * expected.norm());
    const double sup = oracle.star0(w);
    CHECK(proj.star0_seminorm(w) == doctest::Approx(sup).epsilon(1e-10));
    CHECK(star0_seminorm(w) == doctest::Approx(sup).epsilon(1e-10));
  }
}

TEST_CASE("Helmholtz decomposition") {
  const GridPtr g = make_grid(MacGrid::build({graded_coords(7, 1.0, 0.5), graded_coords(6, 1.0, 0.2), graded_coords(5, 2.0, 0.0)}));
  std::mt19937_64 rng(3);
  const VelocityField w = testing::random_velocity(g, rng);
  const Decomposition d = Projector(g, 1e-13).decompose(w);
  CHECK(d.stats.converged);
  const VelocityField back = d.v + grad_N(d.psi);
  CHECK(l2_norm(back - w) <= 1e-13 * l2_norm(w));
  CHECK(std::abs(d.psi.integral()) <= 1e-13 * l2_norm(d.psi));
  double div_max = 0.0;
  for (double v : div_N(d.v).values()) div_max = std::max(div_max, std::abs(v));
  CHECK(div_max * g->h() <= 1e-11 * l2_norm(w));
  // orthogonality and Pythagoras
  const VelocityField gpsi = grad_N(d.psi);
  CHECK(std::abs(inner(d.v, gpsi)) <= 1e-11 * l2_norm(w) * l2_norm(w));
  const double lhs = inner(w, w), rhs = inner(d.v, d.v) + inner(gpsi, gpsi);
  CHECK(lhs == doctest::Approx(rhs).epsilon(1e-11));
}

TEST_CASE("projection identities") {
  const GridPtr g = grid5();
  std::mt19937_64 rng(9);
  const VelocityField w = testing::random_velocity(g, rng);
  const VelocityField pw = project_EN(w);
  CHECK(l2_norm(project_EN(pw) - pw) <= 1e-10 * l2_norm(w));
  // gradients have zero star-0 seminorm
  const PressureField q = testing::random_pressure(g, rng);
  CHECK(star0_seminorm(grad_N(q)) <= 1e-10 * l2_norm(grad_N(q)));
  // already divergence-free fields are left alone
  CHECK(l2_norm(leray_initialize(pw) - pw) <= 1e-10 * l2_norm(pw));
  // zero
  CHECK(l2_norm(project_EN(VelocityField(g))) == 0.0);
}

TEST_CASE("potential solve of an incompatible right-hand side") {
  const GridPtr g = grid5();
  const Projector proj(g);
  std::vector<double> rhs(g->num_cells(), 0.0);
  rhs[3] = 1.0;
  CHECK_THROWS_AS(proj.solve_potential(rhs), IncompatibleRhsError);
}
