// Serial scatter-form reference kernels: loop over faces and dual faces and
// add each flux to both sides. Kept for cross-checking the threaded gather
// kernels and as the benchmark baseline.

#include "macproj/operators.hpp"

namespace macproj {

namespace ref {

VelocityField grad_N(const PressureField& p) {
  const MacGrid& g = p.grid();
  VelocityField out(p.grid_ptr());
  for (std::size_t c = 0; c < g.num_cells(); ++c) {
    const auto faces = g.cell_faces(c);
    for (int a = 0; a < g.dim(); ++a) {
      // p_c enters the low face of the cell with +, the high face with -.
      const std::size_t lo = faces[2 * a], hi = faces[2 * a + 1];
      if (!g.is_exterior(lo)) out[lo] += p[c] / g.face_distance(lo);
      if (!g.is_exterior(hi)) out[hi] -= p[c] / g.face_distance(hi);
    }
  }
  return out;
}

PressureField div_N(const VelocityField& u) {
  const MacGrid& g = u.grid();
  PressureField out(u.grid_ptr());
  for (std::size_t f = 0; f < g.num_faces(); ++f) {
    if (g.is_exterior(f)) continue;
    const double flux = g.face_area(f) * u[f];
    out[g.lower_cell(f)] += flux;
    out[g.upper_cell(f)] -= flux;
  }
  for (std::size_t c = 0; c < g.num_cells(); ++c) out[c] /= g.cell_volume(c);
  return out;
}

VelocityField laplace_N(const VelocityField& u) {
  const MacGrid& g = u.grid();
  VelocityField out(u.grid_ptr());
  auto val = [&](std::size_t f) { return (f == kNoFace || g.is_exterior(f)) ? 0.0 : u[f]; };
  for (int i = 0; i < g.dim(); ++i) {
    for (const DualFace& e : g.dual_faces(i)) {
      const double flux = e.area / e.distance * (val(e.upper) - val(e.lower));
      if (e.lower != kNoFace) out[e.lower] += flux;
      if (e.upper != kNoFace) out[e.upper] -= flux;
    }
  }
  for (std::size_t f = 0; f < g.num_faces(); ++f) {
    out[f] = g.is_exterior(f) ? 0.0 : out[f] / g.dual_volume(f);
  }
  return out;
}

VelocityField convect_N(const VelocityField& a, const VelocityField& w) {
  const MacGrid& g = a.grid();
  VelocityField out(a.grid_ptr());
  auto val = [&](std::size_t f) { return (f == kNoFace || g.is_exterior(f)) ? 0.0 : w[f]; };
  for (int i = 0; i < g.dim(); ++i) {
    for (const DualFace& e : g.dual_faces(i)) {
      const double transport = dual_flux(e, a) * 0.5 * (val(e.lower) + val(e.upper));
      if (e.lower != kNoFace) out[e.lower] += transport;
      if (e.upper != kNoFace) out[e.upper] -= transport;
    }
  }
  for (std::size_t f = 0; f < g.num_faces(); ++f) {
    out[f] = g.is_exterior(f) ? 0.0 : out[f] / g.dual_volume(f);
  }
  return out;
}

}  // namespace ref

}  // namespace macproj
