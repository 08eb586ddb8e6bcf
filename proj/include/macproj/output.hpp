#pragma once

#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "macproj/config.hpp"
#include "macproj/diagnostics.hpp"
#include "macproj/fields.hpp"
#include "macproj/verify.hpp"

namespace macproj {

class OutputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shortest exact text form of a double (%.17g).
std::string format_double(double v);

/// Per-step CSV, one row per step:
///   n,t,kinetic_energy,dissipation,grad_p_norm,coupling_norm,div_max,
///   energy_residual,pred_iters,corr_iters,energy_scale,pred_residual,corr_residual
class DiagnosticsWriter {
 public:
  explicit DiagnosticsWriter(const std::filesystem::path& path);
  void write(const StepDiagnostics& d);
  static std::string header();
  static std::string row(const StepDiagnostics& d);

 private:
  std::ofstream out_;
};

/// kind,index,i,j,k,x,y,z,value with kind u0/u1/u2 for faces and p for cells.
std::string fields_csv(const VelocityField& u, const PressureField& p);
/// Legacy VTK rectilinear grid with cell pressure and cell-averaged velocity.
std::string fields_vtk(const VelocityField& u, const PressureField& p);

/// Writes <dir>/fields_<step>.csv or .vtk and returns the path.
std::filesystem::path emit_fields(const std::filesystem::path& dir, int step, const VelocityField& u,
                                  const PressureField& p, FieldFormat format);

std::string study_csv(const StudyReport& report);
std::string translate_csv(const std::vector<TranslateRow>& rows);
std::string property_csv(const PropertyReport& report);

/// Creates parent directories; throws OutputError when the file cannot be written.
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace macproj
