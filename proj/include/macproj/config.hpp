#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "macproj/grid.hpp"
#include "macproj/problems.hpp"
#include "macproj/scheme.hpp"
#include "macproj/verify.hpp"

namespace macproj {

enum class FieldFormat { kNone, kCsv, kVtk };

struct RunConfig {
  // [domain]
  std::array<double, 3> extent{1.0, 1.0, 1.0};
  // [grid]
  int dim = 3;
  int n = 4;
  double stretch = 0.0;
  std::array<std::vector<double>, 3> coords;  // explicit axis coordinates, empty = uniform/graded
  // [time]
  double T = 1.0;
  int N = 8;
  // [problem]
  std::string problem = "poly3d";
  std::optional<std::array<double, 3>> force;  // constant body force instead of a named problem
  // [solver]
  double pred_tol = 1e-10;
  double poisson_tol = 1e-10;
  int max_iter = 20000;
  // [output]
  std::string out_dir = "out";
  int every = 0;  // field snapshots every k steps, 0 = final state only
  FieldFormat format = FieldFormat::kCsv;
  // [run]
  std::uint64_t seed = 20240611;
  // [study]
  std::vector<std::array<int, 2>> levels{{8, 8}, {16, 16}, {32, 32}};
  std::vector<double> taus;
  int trials = 100;

  bool operator==(const RunConfig&) const = default;
};

/// All problems found while reading or validating a config, one per entry,
/// each naming its key as section.key.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<std::string> issues);
  const std::vector<std::string>& issues() const { return issues_; }

 private:
  std::vector<std::string> issues_;
};

/// Flat format:
///   # comment
///   [section]
///   key = value
/// Lists are whitespace or comma separated. Unknown sections and keys are
/// errors. Missing keys keep their defaults.
RunConfig parse_config(const std::string& text);

/// Every key in canonical order; parse_config(serialize_config(c)) == c.
std::string serialize_config(const RunConfig& config);

/// Environment override: MACPROJ_<SECTION>_<KEY> (upper case) replaces the
/// value of section.key. `getenv` is injectable for tests.
using EnvLookup = std::function<const char*(const char*)>;
void apply_env_overrides(RunConfig& config, const EnvLookup& getenv);

/// Throws ConfigError listing every violated constraint.
void validate(const RunConfig& config);

/// Names of all keys as section.key, in canonical order.
std::vector<std::string> config_keys();

MacGrid make_grid_from(const RunConfig& config);
AnalyticProblem make_problem(const RunConfig& config);
SchemeOptions scheme_options(const RunConfig& config);

}  // namespace macproj
