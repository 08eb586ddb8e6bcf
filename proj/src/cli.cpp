#include "macproj/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "macproj/operators.hpp"
#include "macproj/output.hpp"
#include "macproj/scheme.hpp"
#include "macproj/verify.hpp"

namespace macproj {

namespace fs = std::filesystem;

namespace {

struct CommonFlags {
  std::string config_path;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

RunConfig load_config(const CommonFlags& flags, const EnvLookup& env) {
  RunConfig c;
  if (!flags.config_path.empty()) {
    std::ifstream in(flags.config_path);
    if (!in) throw UsageError("cannot read config " + flags.config_path);
    std::stringstream text;
    text << in.rdbuf();
    c = parse_config(text.str());
  }
  apply_env_overrides(c, env);
  if (!flags.out_dir.empty()) c.out_dir = flags.out_dir;
  if (flags.seed) c.seed = *flags.seed;
  validate(c);
  return c;
}

void persist_config(const RunConfig& c) { write_text(fs::path(c.out_dir) / "config.ini", serialize_config(c)); }

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4e", v);
  return buf;
}

int cmd_run(const RunConfig& c, std::ostream& out) {
  persist_config(c);
  const fs::path dir(c.out_dir);
  const GridPtr grid = make_grid(make_grid_from(c));
  ProjectionScheme scheme(grid, scheme_options(c));
  DiagnosticsWriter diag(dir / "diagnostics.csv");
  const FieldFormat format = c.format;
  int worst_step = 0;
  double worst = 0.0;
  const Trajectory traj = scheme.run(make_problem(c), c.T, c.N, [&](const SchemeState& s, const StepDiagnostics& d) {
    diag.write(d);
    const double rel = d.energy_residual / std::max(d.energy_scale, 1e-300);
    if (rel < worst) {
      worst = rel;
      worst_step = d.n;
    }
    out << "step " << d.n << " t=" << format_double(d.t) << " E=" << sci(d.kinetic_energy) << " div=" << sci(d.div_max)
        << " energy_res=" << sci(rel) << " iters=" << d.pred_iters << "/" << d.corr_iters << "\n";
    if (format != FieldFormat::kNone && c.every > 0 && s.n % c.every == 0) emit_fields(dir, s.n, s.u, s.p, format);
  });
  if (format != FieldFormat::kNone) emit_fields(dir, static_cast<int>(traj.steps.size()), traj.final_u, traj.final_p, format);
  if (!traj.complete()) {
    out << "run failed: " << *traj.failure << "\n";
    return kExitVerdict;
  }
  const bool ok = worst >= -1e-9;
  out << "run " << (ok ? "ok" : "FAILED") << ": " << traj.steps.size() << " steps, worst relative energy residual "
      << sci(worst) << " (step " << worst_step << ")\n";
  return ok ? kExitOk : kExitVerdict;
}

int cmd_verify(const RunConfig& c, std::ostream& out) {
  persist_config(c);
  PropertyOptions opt;
  opt.trials = c.trials;
  opt.seed = c.seed;
  const PropertyReport report = property_suite(make_grid(make_grid_from(c)), opt);
  write_text(fs::path(c.out_dir) / "properties.csv", property_csv(report));
  for (const auto& check : report.checks) {
    out << (check.passed() ? "PASS " : "FAIL ") << check.name << " max_residual=" << sci(check.max_residual)
        << " tol=" << sci(check.tolerance) << "\n";
  }
  return report.passed() ? kExitOk : kExitVerdict;
}

std::vector<std::array<int, 2>> parse_levels(const std::string& text) {
  RunConfig tmp;
  try {
    tmp = parse_config("[study]\nlevels = " + text + "\n");
  } catch (const ConfigError& e) {
    throw UsageError("--levels: expected n:N pairs, e.g. 8:8,16:16,32:32");
  }
  return tmp.levels;
}

int cmd_convergence(RunConfig c, const std::string& levels_flag, std::ostream& out) {
  if (!levels_flag.empty()) c.levels = parse_levels(levels_flag);
  if (c.levels.size() < 2) throw UsageError("a convergence study needs at least 2 levels");
  persist_config(c);
  std::vector<StudyLevel> levels;
  for (const auto& [n, steps] : c.levels) {
    RunConfig lc = c;
    lc.n = n;
    lc.coords = {};
    levels.push_back({make_grid(make_grid_from(lc)), steps});
  }
  StudyOptions opt;
  opt.horizon = c.T;
  opt.scheme = scheme_options(c);
  const StudyReport report = convergence_study(make_problem(c), levels, opt);
  write_text(fs::path(c.out_dir) / "study.csv", study_csv(report));
  for (std::size_t k = 0; k < report.rows.size(); ++k) {
    const StudyRow& r = report.rows[k];
    out << "level " << k << " h=" << sci(r.h) << " dt=" << sci(r.dt) << " theta=" << sci(r.theta)
        << " l2l2=" << sci(r.l2l2_error) << " final=" << sci(r.final_l2_error) << " h1=" << sci(r.l2h1_error)
        << " coupling=" << sci(r.coupling) << "\n";
  }
  out << (report.error_decreasing ? "PASS" : "FAIL") << " error decrease (ratio <= 0.8)\n";
  out << (report.coupling_first_order ? "ok" : "note") << " coupling ratios in [0.4, 0.6]\n";
  return report.passed() ? kExitOk : kExitVerdict;
}

void write_matrix_market(const fs::path& path, const CsrMatrix& m) {
  std::string s = "%%MatrixMarket matrix coordinate real general\n";
  s += std::to_string(m.rows) + " " + std::to_string(m.cols) + " " + std::to_string(m.nnz()) + "\n";
  for (std::size_t r = 0; r < m.rows; ++r) {
    for (std::size_t k = m.row_ptr[r]; k < m.row_ptr[r + 1]; ++k) {
      s += std::to_string(r + 1) + " " + std::to_string(m.col_idx[k] + 1) + " " + format_double(m.values[k]) + "\n";
    }
  }
  write_text(path, s);
}

int cmd_operators_check(const RunConfig& c, std::ostream& out) {
  persist_config(c);
  const GridPtr grid = make_grid(make_grid_from(c));
  const MacGrid& g = *grid;
  const OperatorWorkspace ops(grid);
  const fs::path dir(c.out_dir);
  write_matrix_market(dir / "gradient.mtx", ops.gradient());
  write_matrix_market(dir / "divergence.mtx", ops.divergence());
  write_matrix_market(dir / "stiffness.mtx", ops.stiffness());
  write_matrix_market(dir / "poisson.mtx", ops.poisson());

  // |D_sigma| G(sigma, K) = -|K| D(K, sigma) entrywise.
  double duality = 0.0;
  for (std::size_t f = 0; f < g.num_faces(); ++f) {
    for (std::size_t k = ops.gradient().row_ptr[f]; k < ops.gradient().row_ptr[f + 1]; ++k) {
      const std::size_t cell = ops.gradient().col_idx[k];
      const double lhs = g.dual_volume(f) * ops.gradient().values[k];
      const double rhs = -g.cell_volume(cell) * ops.divergence().at(cell, f);
      duality = std::max(duality, std::abs(lhs - rhs) / g.face_area(f));
    }
  }
  double symmetry = 0.0;
  const CsrMatrix& s = ops.stiffness();
  for (std::size_t r = 0; r < s.rows; ++r) {
    for (std::size_t k = s.row_ptr[r]; k < s.row_ptr[r + 1]; ++k) {
      const double v = s.values[k];
      symmetry = std::max(symmetry, std::abs(v - s.at(s.col_idx[k], r)) / std::max(std::abs(v), 1e-300));
    }
  }
  // poisson x = -|K| div grad x
  std::mt19937_64 rng(c.seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  PressureField x(grid);
  for (double& v : x.values()) v = u(rng);
  const auto px = ops.poisson() * x.values();
  const PressureField dg = div_N(grad_N(x));
  double num = 0.0, den = 0.0;
  for (std::size_t k = 0; k < g.num_cells(); ++k) {
    num += std::pow(px[k] + g.cell_volume(k) * dg[k], 2);
    den += px[k] * px[k];
  }
  const double poisson = std::sqrt(num / std::max(den, 1e-300));

  const double tol = 1e-12;
  bool ok = true;
  for (const auto& [name, value] : {std::pair<const char*, double>{"duality", duality}, {"stiffness_symmetry", symmetry},
                                    {"poisson_consistency", poisson}}) {
    ok = ok && value <= tol;
    out << (value <= tol ? "PASS " : "FAIL ") << name << " residual=" << sci(value) << " tol=" << sci(tol) << "\n";
  }
  out << "matrices written to " << dir.string() << "\n";
  return ok ? kExitOk : kExitVerdict;
}

int cmd_translate(RunConfig c, const std::string& taus_flag, std::ostream& out) {
  if (!taus_flag.empty()) {
    try {
      c.taus = parse_config("[study]\ntaus = " + taus_flag + "\n").taus;
    } catch (const ConfigError&) {
      throw UsageError("--taus: expected a list of non-negative numbers");
    }
  }
  persist_config(c);
  const GridPtr grid = make_grid(make_grid_from(c));
  ProjectionScheme scheme(grid, scheme_options(c));
  const Trajectory traj = scheme.run(make_problem(c), c.T, c.N);
  if (!traj.complete()) {
    out << "run failed: " << *traj.failure << "\n";
    return kExitVerdict;
  }
  std::vector<double> taus = c.taus;
  if (taus.empty()) {
    for (int m = 0; m < c.N; m = m == 0 ? 1 : 2 * m) taus.push_back(m * traj.dt);
  }
  std::vector<TranslateRow> rows;
  try {
    rows = translate_diagnostic(traj, taus);
  } catch (const TranslateError& e) {
    throw UsageError(e.what());
  }
  write_text(fs::path(c.out_dir) / "translates.csv", translate_csv(rows));
  bool ok = true;
  for (const auto& r : rows) {
    const bool row_ok = r.star0 <= r.l2 + 1e-13;
    ok = ok && row_ok;
    out << "tau=" << format_double(r.tau) << " l2=" << sci(r.l2) << " star0=" << sci(r.star0)
        << (row_ok ? "" : "  (star0 > l2)") << "\n";
  }
  return ok ? kExitOk : kExitVerdict;
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, const EnvLookup& env) {
  CLI::App app{"MAC-grid incremental projection solver and verification harness", "macproj"};
  app.require_subcommand(1);

  CommonFlags flags;
  std::string levels, taus;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", flags.config_path, "run configuration file")->check(CLI::ExistingFile);
    sub->add_option("--out", flags.out_dir, "output directory");
    sub->add_option_function<std::uint64_t>("--seed", [&](const std::uint64_t& s) { flags.seed = s; },
                                            "random seed");
  };
  auto* run = app.add_subcommand("run", "advance the scheme and write diagnostics");
  auto* verify = app.add_subcommand("verify", "randomized operator and projection identities");
  auto* convergence = app.add_subcommand("convergence", "manufactured-solution refinement study");
  auto* ops = app.add_subcommand("operators-check", "export operator matrices and check their identities");
  auto* translate = app.add_subcommand("translate", "time-translate table of the predicted velocity");
  for (auto* sub : {run, verify, convergence, ops, translate}) add_common(sub);
  convergence->add_option("--levels", levels, "n:N pairs, coarse to fine");
  translate->add_option("--taus", taus, "translate lengths, multiples of T/N");

  std::vector<std::string> rev(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n" << app.help();
    return kExitUsage;
  }

  try {
    const RunConfig c = load_config(flags, env);
    if (*run) return cmd_run(c, out);
    if (*verify) return cmd_verify(c, out);
    if (*convergence) return cmd_convergence(c, levels, out);
    if (*ops) return cmd_operators_check(c, out);
    return cmd_translate(c, taus, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ConfigError& e) {
    err << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitVerdict;
  }
}

}  // namespace macproj
