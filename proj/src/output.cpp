#include "macproj/output.hpp"

#include <cstdio>
#include <sstream>

namespace macproj {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

std::ofstream open_for_writing(const std::filesystem::path& path) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw OutputError("cannot write " + path.string());
  return out;
}

}  // namespace

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out = open_for_writing(path);
  out << text;
  if (!out) throw OutputError("cannot write " + path.string());
}

DiagnosticsWriter::DiagnosticsWriter(const std::filesystem::path& path) : out_(open_for_writing(path)) {
  out_ << header() << '\n';
}

void DiagnosticsWriter::write(const StepDiagnostics& d) {
  out_ << row(d) << '\n';
  out_.flush();
}

std::string DiagnosticsWriter::header() {
  return "n,t,kinetic_energy,dissipation,grad_p_norm,coupling_norm,div_max,energy_residual,pred_iters,corr_iters,"
         "energy_scale,pred_residual,corr_residual";
}

std::string DiagnosticsWriter::row(const StepDiagnostics& d) {
  std::string s = std::to_string(d.n);
  for (double v : {d.t, d.kinetic_energy, d.dissipation, d.grad_p_norm, d.coupling_norm, d.div_max, d.energy_residual}) {
    s += "," + format_double(v);
  }
  s += "," + std::to_string(d.pred_iters) + "," + std::to_string(d.corr_iters);
  for (double v : {d.energy_scale, d.pred_residual, d.corr_residual}) s += "," + format_double(v);
  return s;
}

std::string fields_csv(const VelocityField& u, const PressureField& p) {
  const MacGrid& g = u.grid();
  std::ostringstream out;
  out << "kind,index,i,j,k,x,y,z,value\n";
  auto line = [&](const std::string& kind, std::size_t idx, const MultiIndex& m, const Point& x, double v) {
    out << kind << ',' << idx << ',' << m[0] << ',' << m[1] << ',' << m[2];
    for (double c : x) out << ',' << format_double(c);
    out << ',' << format_double(v) << '\n';
  };
  for (std::size_t f = 0; f < g.num_faces(); ++f) {
    line("u" + std::to_string(g.face_direction(f)), f, g.face_multi(f), g.face_center(f), u[f]);
  }
  for (std::size_t c = 0; c < g.num_cells(); ++c) line("p", c, g.cell_multi(c), g.cell_center(c), p[c]);
  return out.str();
}

std::string fields_vtk(const VelocityField& u, const PressureField& p) {
  const MacGrid& g = u.grid();
  std::ostringstream out;
  out << "# vtk DataFile Version 3.0\nmacproj fields\nASCII\nDATASET RECTILINEAR_GRID\n";
  out << "DIMENSIONS";
  for (int a = 0; a < 3; ++a) out << ' ' << (a < g.dim() ? g.cells_along(a) + 1 : 1);
  out << '\n';
  static const char* names[3] = {"X_COORDINATES", "Y_COORDINATES", "Z_COORDINATES"};
  for (int a = 0; a < 3; ++a) {
    if (a < g.dim()) {
      const auto x = g.coords(a);
      out << names[a] << ' ' << x.size() << " double\n";
      for (std::size_t k = 0; k < x.size(); ++k) out << (k ? " " : "") << format_double(x[k]);
      out << '\n';
    } else {
      out << names[a] << " 1 double\n0\n";
    }
  }
  out << "CELL_DATA " << g.num_cells() << "\nSCALARS pressure double 1\nLOOKUP_TABLE default\n";
  for (std::size_t c = 0; c < g.num_cells(); ++c) out << format_double(p[c]) << '\n';
  out << "VECTORS velocity double\n";
  for (std::size_t c = 0; c < g.num_cells(); ++c) {
    const auto faces = g.cell_faces(c);
    for (int a = 0; a < 3; ++a) {
      const double v = a < g.dim() ? 0.5 * (u[faces[2 * a]] + u[faces[2 * a + 1]]) : 0.0;
      out << (a ? " " : "") << format_double(v);
    }
    out << '\n';
  }
  return out.str();
}

std::filesystem::path emit_fields(const std::filesystem::path& dir, int step, const VelocityField& u,
                                  const PressureField& p, FieldFormat format) {
  char name[32];
  const bool vtk = format == FieldFormat::kVtk;
  std::snprintf(name, sizeof name, "fields_%06d.%s", step, vtk ? "vtk" : "csv");
  const auto path = dir / name;
  write_text(path, vtk ? fields_vtk(u, p) : fields_csv(u, p));
  return path;
}

std::string study_csv(const StudyReport& report) {
  std::string s = "level,h,dt,theta,l2l2_error,final_l2_error,l2h1_error,coupling,worst_energy_residual\n";
  for (std::size_t k = 0; k < report.rows.size(); ++k) {
    const StudyRow& r = report.rows[k];
    s += std::to_string(k);
    for (double v : {r.h, r.dt, r.theta, r.l2l2_error, r.final_l2_error, r.l2h1_error, r.coupling,
                     r.worst_energy_residual}) {
      s += "," + format_double(v);
    }
    s += '\n';
  }
  return s;
}

std::string translate_csv(const std::vector<TranslateRow>& rows) {
  std::string s = "tau,l2,star0\n";
  for (const auto& r : rows) s += format_double(r.tau) + "," + format_double(r.l2) + "," + format_double(r.star0) + "\n";
  return s;
}

std::string property_csv(const PropertyReport& report) {
  std::string s = "check,max_residual,tolerance,passed\n";
  for (const auto& c : report.checks) {
    s += c.name + "," + format_double(c.max_residual) + "," + format_double(c.tolerance) + "," +
         (c.passed() ? "1" : "0") + "\n";
  }
  return s;
}

}  // namespace macproj
