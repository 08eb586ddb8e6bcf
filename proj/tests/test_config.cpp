#include <doctest.h>

#include <map>

#include "macproj/config.hpp"

using namespace macproj;

namespace {

bool mentions(const ConfigError& e, const std::string& key) {
  for (const auto& i : e.issues()) {
    if (i.find(key) != std::string::npos) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("minimal config keeps defaults") {
  const RunConfig c = parse_config("[time]\nT = 2\n");
  RunConfig expected;
  expected.T = 2.0;
  CHECK(c == expected);
  CHECK(parse_config("") == RunConfig{});
  CHECK(parse_config("# only a comment\n\n") == RunConfig{});
}

TEST_CASE("values of every kind") {
  const RunConfig c = parse_config(R"(
[domain]
extent = 1, 1
[grid]
dim = 2
n = 8          # cells per axis
stretch = 0.25
y = 0 0.1 0.5 1
[time]
N = 32
[problem]
name = trig2d
[solver]
pred_tol = 1e-11
[output]
dir = results/run1
every = 4
format = vtk
[run]
seed = 18446744073709551615
[study]
levels = 4:4, 8:8
taus = 0 0.125
trials = 3
)");
  CHECK(c.dim == 2);
  CHECK(c.n == 8);
  CHECK(c.stretch == 0.25);
  CHECK(c.coords[1] == std::vector<double>{0.0, 0.1, 0.5, 1.0});
  CHECK(c.N == 32);
  CHECK(c.problem == "trig2d");
  CHECK(c.pred_tol == 1e-11);
  CHECK(c.out_dir == "results/run1");
  CHECK(c.format == FieldFormat::kVtk);
  CHECK(c.seed == 18446744073709551615ull);
  CHECK(c.levels == std::vector<std::array<int, 2>>{{4, 4}, {8, 8}});
  CHECK(c.taus == std::vector<double>{0.0, 0.125});
  CHECK(c.trials == 3);

  const MacGrid g = make_grid_from(c);
  CHECK(g.dim() == 2);
  CHECK(g.cells_along(0) == 8);
  CHECK(g.cells_along(1) == 3);
}

TEST_CASE("errors name their keys") {
  try {
    parse_config("[time]\nN = 0\n");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(mentions(e, "time.N"));
    CHECK(std::string(e.what()).find("N") != std::string::npos);
  }
  try {
    parse_config("[time]\nT = -1\n[solver]\npoisson_tol = 2\n[grid]\nspeed = 3\n");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    // unknown keys are reported before validation
    CHECK(mentions(e, "grid.speed"));
  }
  try {
    parse_config("[time]\nT = -1\n[solver]\npoisson_tol = 2\n");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.issues().size() == 2);
    CHECK(mentions(e, "time.T"));
    CHECK(mentions(e, "solver.poisson_tol"));
  }
  auto fails_on = [](const std::string& text, const std::string& key) {
    try {
      parse_config(text);
    } catch (const ConfigError& e) {
      return mentions(e, key);
    }
    return false;
  };
  CHECK(fails_on("[mesh]\nn = 3\n", "[mesh]"));
  CHECK(fails_on("[grid]\nn = three\n", "grid.n"));
  CHECK(fails_on("[grid]\nn 3\n", "line 2"));
  CHECK(fails_on("[grid]\nx = 0 0.5 0.4 1\n", "grid.x"));
  CHECK(fails_on("[grid]\ndim = 2\n[problem]\nname = poly3d\n", "problem.name"));
  CHECK(fails_on("[problem]\nname = nope\n", "problem.name"));
  CHECK(fails_on("[domain]\nextent = 2 1 1\n", "domain.extent"));
  CHECK(fails_on("[output]\nformat = hdf5\n", "output.format"));
  CHECK(fails_on("[study]\nlevels = 8\n", "study.levels"));
  CHECK(fails_on("[grid]\ndim = 2\n[problem]\nname = poly2d\n[grid]\nz = 0 0.5 1\n", "grid.z"));
  CHECK(fails_on("[grid]\nstretch = 1\n", "grid.stretch"));
}

TEST_CASE("serialize then parse is the identity") {
  RunConfig c;
  c.extent = {1.0, 1.0, 1.0};
  c.dim = 2;
  c.n = 10;
  c.stretch = 0.1 + 0.2;  // not exactly representable in short decimal
  c.coords[0] = {0.0, 1.0 / 3.0, 0.7, 1.0};
  c.T = 0.1;
  c.N = 7;
  c.problem = "trig2d";
  c.pred_tol = 3e-11;
  c.poisson_tol = 1e-12;
  c.max_iter = 123;
  c.out_dir = "some/where";
  c.every = 2;
  c.format = FieldFormat::kNone;
  c.seed = 42;
  c.levels = {{4, 2}, {8, 4}, {16, 8}};
  c.taus = {0.0, 1.0 / 7.0};
  c.trials = 9;
  validate(c);
  const std::string text = serialize_config(c);
  CHECK(parse_config(text) == c);
  CHECK(serialize_config(parse_config(text)) == text);

  RunConfig f;
  f.force = std::array<double, 3>{0.0, 0.0, -9.81};
  CHECK(parse_config(serialize_config(f)) == f);
  CHECK(parse_config(serialize_config(RunConfig{})) == RunConfig{});
}

TEST_CASE("every key round-trips and is reachable from the environment") {
  const auto keys = config_keys();
  CHECK(keys.size() == 21);
  CHECK(keys.front() == "domain.extent");

  std::map<std::string, std::string> env{{"MACPROJ_TIME_N", "5"}, {"MACPROJ_OUTPUT_DIR", "env_out"},
                                         {"MACPROJ_GRID_STRETCH", "0.5"}};
  RunConfig c;
  apply_env_overrides(c, [&](const char* name) -> const char* {
    auto it = env.find(name);
    return it == env.end() ? nullptr : it->second.c_str();
  });
  CHECK(c.N == 5);
  CHECK(c.out_dir == "env_out");
  CHECK(c.stretch == 0.5);

  env = {{"MACPROJ_TIME_N", "0"}};
  RunConfig d;
  CHECK_THROWS_AS(apply_env_overrides(d,
                                      [&](const char* name) -> const char* {
                                        auto it = env.find(name);
                                        return it == env.end() ? nullptr : it->second.c_str();
                                      }),
                  ConfigError);
}

TEST_CASE("problem selection") {
  RunConfig c;
  CHECK(make_problem(c).name == "poly3d");
  c.force = std::array<double, 3>{1.0, 0.0, 0.0};
  CHECK(make_problem(c).name == "body_force");
  const SchemeOptions o = scheme_options(c);
  CHECK(o.prediction_tolerance == c.pred_tol);
  CHECK(o.max_iterations == c.max_iter);
}
