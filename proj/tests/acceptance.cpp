// End-to-end acceptance suite: one PASS/FAIL line per criterion.
#include <omp.h>

#include <CLI11.hpp>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "dense_oracle.hpp"
#include "macproj/operators.hpp"
#include "macproj/output.hpp"
#include "macproj/projection.hpp"
#include "macproj/verify.hpp"

using namespace macproj;
namespace fs = std::filesystem;

namespace {

constexpr std::uint64_t kSeed = 20240611;

struct Verdict {
  int id;
  std::string name;
  bool passed;
  std::string detail;
};

std::vector<Verdict> verdicts;

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

void report(int id, const std::string& name, bool passed, const std::string& detail) {
  verdicts.push_back({id, name, passed, detail});
  std::cout << (passed ? "PASS" : "FAIL") << "  criterion " << id << ": " << name << "  [" << detail << "]"
            << std::endl;
}

double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// Property suites on 20 random grids, 10 in 2D and 10 in 3D, up to 16 cells per axis.
std::vector<PropertyReport> random_grid_suites() {
  std::mt19937_64 rng(kSeed);
  std::vector<PropertyReport> out;
  for (int k = 0; k < 20; ++k) {
    const int dim = k < 10 ? 2 : 3;
    PropertyOptions opt;
    opt.trials = 100;
    opt.seed = kSeed + static_cast<std::uint64_t>(k);
    out.push_back(property_suite(make_grid(random_grid(dim, 16, rng)), opt));
  }
  return out;
}

double worst(const std::vector<PropertyReport>& suites, const std::string& check) {
  double w = 0.0;
  for (const auto& s : suites) w = std::max(w, s[check].max_residual);
  return w;
}

struct RunRecord {
  Trajectory traj;
  double worst_energy = 0.0;  // most negative residual relative to its scale
  double worst_div = 0.0;
  double worst_mean = 0.0;  // |sum |K| p_K| / ||p||
  double seconds = 0.0;
};

RunRecord mms_run(const std::string& problem, int dim, int n, int steps, const fs::path& csv) {
  const GridPtr g = make_grid(dim == 2 ? MacGrid::build({graded_coords(n, 1.0, 0.25), graded_coords(n, 1.0, 0.0)})
                                       : MacGrid::build({graded_coords(n, 1.0, 0.25), graded_coords(n, 1.0, 0.0),
                                                         graded_coords(n, 1.0, 0.1)}));
  ProjectionScheme scheme(g);
  DiagnosticsWriter diag(csv);
  RunRecord r;
  const auto t0 = std::chrono::steady_clock::now();
  r.traj = scheme.run(mms_problem(problem), 1.0, steps, [&](const SchemeState& s, const StepDiagnostics& d) {
    diag.write(d);
    r.worst_energy = std::min(r.worst_energy, d.energy_residual / std::max(d.energy_scale, 1e-300));
    r.worst_div = std::max(r.worst_div, d.div_max);
    const double pn = l2_norm(s.p);
    r.worst_mean = std::max(r.worst_mean, pn > 0.0 ? std::abs(d.pressure_mean) / pn : std::abs(d.pressure_mean));
  });
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance suite"};
  std::string out_dir = "acceptance_out";
  app.add_option("--out", out_dir, "directory for diagnostics files");
  CLI11_PARSE(app, argc, argv);
  const fs::path out(out_dir);
  fs::create_directories(out);
  const auto start = std::chrono::steady_clock::now();

  const std::vector<PropertyReport> suites = random_grid_suites();

  // 1
  {
    const double d = worst(suites, "duality");
    report(1, "discrete duality", d <= 1e-12, "20 grids x 100 pairs, max " + sci(d) + " <= 1e-12");
  }

  // 2
  {
    const double skew = worst(suites, "skew_symmetry"), energy = worst(suites, "laplace_energy");
    report(2, "skew-symmetry and coercivity", skew <= 1e-12 && energy <= 1e-12,
           "skew " + sci(skew) + ", laplace energy " + sci(energy) + " <= 1e-12");
  }

  // 3
  {
    std::mt19937_64 rng(kSeed + 3);
    double poly = 0.0, trig = 0.0;
    for (int k = 0; k < 6; ++k) {
      const int dim = k % 2 == 0 ? 2 : 3;
      const std::string name = dim == 2 ? (k % 4 == 0 ? "poly2d" : "trig2d") : "poly3d";
      const int n = 4 + 3 * k;
      std::vector<std::vector<double>> coords;
      std::uniform_real_distribution<double> s(0.0, 0.6);
      for (int a = 0; a < dim; ++a) coords.push_back(graded_coords(n, 1.0, s(rng)));
      const GridPtr g = make_grid(MacGrid::build(coords));
      const AnalyticProblem p = mms_problem(name);
      for (double t : {0.0, 0.37, 1.0}) {
        const VelocityField u = fortin_interpolate(g, p.velocity_at(t));
        const double rel = max_abs(div_N(u).values()) * g->h() / std::max(l2_norm(u), 1e-300);
        (name == "trig2d" ? trig : poly) = std::max(name == "trig2d" ? trig : poly, rel);
      }
    }
    report(3, "Fortin interpolation preserves divergence", poly <= 1e-12 && trig <= 1e-10,
           "polynomial " + sci(poly) + " <= 1e-12, trigonometric " + sci(trig) + " <= 1e-10 (h max|div| / ||u||)");
  }

  // 4, 5
  const RunRecord run2 = mms_run("poly2d", 2, 32, 64, out / "diagnostics_2d.csv");
  const RunRecord run3 = mms_run("poly3d", 3, 8, 32, out / "diagnostics_3d.csv");
  {
    const bool complete = run2.traj.complete() && run3.traj.complete();
    const double e = std::min(run2.worst_energy, run3.worst_energy);
    const double secs = run2.seconds + run3.seconds;
    report(4, "per-step energy inequality", complete && e >= -1e-9 && secs < 180.0,
           "worst residual/scale " + sci(e) + " >= -1e-9, runtime " + sci(secs) + " s < 180 s");
    const double tol = 10 * SchemeOptions{}.poisson_tolerance;
    const double div = std::max(run2.worst_div, run3.worst_div), mean = std::max(run2.worst_mean, run3.worst_mean);
    report(5, "divergence-free velocity and zero-mean pressure", complete && div <= tol && mean <= 1e-12,
           "max div " + sci(div) + " <= " + sci(tol) + ", |sum |K| p|/||p|| " + sci(mean) + " <= 1e-12");
  }

  // 6
  {
    const auto c = coupling_study(mms_problem("poly2d"), make_grid(MacGrid::uniform(2, 32)), {32, 64, 128});
    bool ok = true;
    std::string detail = "||u - u~|| for N = 32, 64, 128: ";
    for (std::size_t k = 0; k < c.size(); ++k) detail += (k ? ", " : "") + sci(c[k]);
    detail += "; ratios";
    for (std::size_t k = 0; k + 1 < c.size(); ++k) {
      const double r = c[k + 1] / c[k];
      ok = ok && r >= 0.4 && r <= 0.6;
      detail += " " + sci(r);
    }
    report(6, "first-order time-step coupling", ok, detail + " in [0.4, 0.6]");
  }

  // 7
  {
    const StudyReport r = convergence_study(mms_problem("poly2d"), refinement_levels(2, 8, 8, 3));
    write_text(out / "study.csv", study_csv(r));
    std::string detail = "L2L2 errors";
    for (const auto& row : r.rows) detail += " " + sci(row.l2l2_error);
    report(7, "convergence under refinement", r.error_decreasing, detail + ", each ratio <= 0.8");
  }

  // 8
  {
    const double idem = worst(suites, "idempotence"), pyth = worst(suites, "pythagoras"),
                 kern = worst(suites, "gradient_kernel");
    const GridPtr g = make_grid(MacGrid::build({{0.0, 0.1, 0.35, 0.5, 0.8, 1.0}, {0.0, 0.3, 0.4, 0.7, 0.75, 1.2}}));
    const testing::DenseKernel oracle(g);
    const Projector proj(g, 1e-13);
    std::mt19937_64 rng(kSeed + 8);
    double sup = 0.0;
    for (int k = 0; k < 20; ++k) {
      const VelocityField w = testing::random_velocity(g, rng);
      const double expected = oracle.star0(w);
      sup = std::max(sup, std::abs(proj.star0_seminorm(w) - expected) / expected);
    }
    const bool ok = idem <= 1e-10 && pyth <= 1e-10 && kern <= 1e-10 && sup <= 1e-10;
    report(8, "projection identities", ok,
           "idempotence " + sci(idem) + ", Pythagoras " + sci(pyth) + ", |grad q|_*0 " + sci(kern) +
               ", 5x5 sup oracle " + sci(sup) + " <= 1e-10");
  }

  // 9
  {
    const Trajectory& traj = run2.traj;
    const double dt = traj.dt;
    const int N = static_cast<int>(traj.steps.size());
    std::vector<double> taus{0.0};
    for (int m = 1; m < N; m *= 2) taus.push_back(m * dt);
    bool ok = traj.complete();
    std::string detail;
    if (ok) {
      const auto rows = translate_diagnostic(traj, taus);
      write_text(out / "translates.csv", translate_csv(rows));
      double increments = 0.0;
      for (int n = 0; n + 1 < N; ++n) {
        const double d = l2_norm(traj.steps[n + 1].u_tilde - traj.steps[n].u_tilde);
        increments += dt * d * d;
      }
      bool ordered = true;
      for (const auto& r : rows) ordered = ordered && r.star0 <= r.l2 + 1e-13;
      const bool bounded = rows[1].l2 <= 4 * increments && rows[1].star0 <= 4 * increments;
      ok = ordered && bounded;
      detail = "tau=dt: l2 " + sci(rows[1].l2) + ", *0 " + sci(rows[1].star0) + " <= 4 x " + sci(increments) +
               "; *0 <= l2 for " + std::to_string(rows.size()) + " taus: " + (ordered ? "yes" : "no");
    } else {
      detail = "2D run failed: " + *traj.failure;
    }
    report(9, "time-translate estimates", ok, detail);
  }

  // 10
  {
    const int threads = omp_get_max_threads();
    omp_set_num_threads(1);
    mms_run("poly2d", 2, 32, 64, out / "diagnostics_2d_serial.csv");
    mms_run("poly3d", 3, 8, 32, out / "diagnostics_3d_serial.csv");
    const int many = std::max(threads, 4);
    omp_set_num_threads(many);
    mms_run("poly2d", 2, 32, 64, out / "diagnostics_2d_repeat.csv");
    omp_set_num_threads(threads);
    const std::string a = slurp(out / "diagnostics_2d.csv");
    const bool ok = !a.empty() && a == slurp(out / "diagnostics_2d_serial.csv") &&
                    a == slurp(out / "diagnostics_2d_repeat.csv") &&
                    slurp(out / "diagnostics_3d.csv") == slurp(out / "diagnostics_3d_serial.csv");
    report(10, "deterministic diagnostics", ok,
           "diagnostics CSVs byte-identical across reruns with " + std::to_string(threads) + ", 1 and " +
               std::to_string(many) + " threads");
  }

  const double total = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  int failed = 0;
  for (const auto& v : verdicts) failed += v.passed ? 0 : 1;
  std::cout << (failed ? "FAIL" : "PASS") << "  " << verdicts.size() - failed << "/" << verdicts.size()
            << " criteria in " << sci(total) << " s" << std::endl;
  return failed ? 1 : 0;
}
