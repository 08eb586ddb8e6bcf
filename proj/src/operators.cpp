#include "macproj/operators.hpp"

#include <algorithm>
#include <cmath>

#include "macproj/parallel.hpp"

namespace macproj {

namespace {

double value_or_zero(const VelocityField& u, std::size_t f) {
  return (f == kNoFace || u.grid().is_exterior(f)) ? 0.0 : u[f];
}

std::size_t other_side(const DualFace& e, double sign) { return sign > 0 ? e.upper : e.lower; }

}  // namespace

double dual_flux(const DualFace& e, const VelocityField& a) {
  double flux = 0.0;
  for (int s = 0; s < 2; ++s) {
    if (e.flux_face[s] != kNoFace) flux += e.flux_area[s] * a[e.flux_face[s]];
  }
  return 0.5 * flux;
}

VelocityField grad_N(const PressureField& p) {
  const MacGrid& g = p.grid();
  VelocityField out(p.grid_ptr());
  const auto nf = static_cast<std::ptrdiff_t>(g.num_faces());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t fi = 0; fi < nf; ++fi) {
    const auto f = static_cast<std::size_t>(fi);
    if (g.is_exterior(f)) continue;
    out[f] = (p[g.upper_cell(f)] - p[g.lower_cell(f)]) / g.face_distance(f);
  }
  return out;
}

PressureField div_N(const VelocityField& u) {
  const MacGrid& g = u.grid();
  PressureField out(u.grid_ptr());
  const auto nc = static_cast<std::ptrdiff_t>(g.num_cells());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t ci = 0; ci < nc; ++ci) {
    const auto c = static_cast<std::size_t>(ci);
    const auto faces = g.cell_faces(c);
    double s = 0.0;
    for (int a = 0; a < g.dim(); ++a) {
      const std::size_t lo = faces[2 * a], hi = faces[2 * a + 1];
      s += g.face_area(hi) * value_or_zero(u, hi) - g.face_area(lo) * value_or_zero(u, lo);
    }
    out[c] = s / g.cell_volume(c);
  }
  return out;
}

VelocityField laplace_N(const VelocityField& u) {
  const MacGrid& g = u.grid();
  VelocityField out(u.grid_ptr());
  const auto nf = static_cast<std::ptrdiff_t>(g.num_faces());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t fi = 0; fi < nf; ++fi) {
    const auto f = static_cast<std::size_t>(fi);
    if (g.is_exterior(f)) continue;
    const auto dual = g.dual_faces(g.face_direction(f));
    double s = 0.0;
    for (const auto& entry : g.dual_stencil(f)) {
      const DualFace& e = dual[entry.dual_face];
      s += e.area / e.distance * (u[f] - value_or_zero(u, other_side(e, entry.sign)));
    }
    out[f] = -s / g.dual_volume(f);
  }
  return out;
}

VelocityField convect_N(const VelocityField& a, const VelocityField& w) {
  const MacGrid& g = a.grid();
  VelocityField out(a.grid_ptr());
  const auto nf = static_cast<std::ptrdiff_t>(g.num_faces());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t fi = 0; fi < nf; ++fi) {
    const auto f = static_cast<std::size_t>(fi);
    if (g.is_exterior(f)) continue;
    const auto dual = g.dual_faces(g.face_direction(f));
    double s = 0.0;
    for (const auto& entry : g.dual_stencil(f)) {
      const DualFace& e = dual[entry.dual_face];
      const double flux_out = entry.sign * dual_flux(e, a);
      s += flux_out * 0.5 * (w[f] + value_or_zero(w, other_side(e, entry.sign)));
    }
    out[f] = s / g.dual_volume(f);
  }
  return out;
}

double b_N(const VelocityField& a, const VelocityField& w, const VelocityField& v) {
  return inner(convect_N(a, w), v);
}

OperatorWorkspace::OperatorWorkspace(GridPtr grid) : grid_(std::move(grid)) {
  const MacGrid& g = *grid_;
  const std::size_t nf = g.num_faces(), nc = g.num_cells();

  CsrBuilder grad(nf, nc), div(nc, nf), poisson(nc, nc);
  for (std::size_t f = 0; f < nf; ++f) {
    if (g.is_exterior(f)) continue;
    const std::size_t k = g.lower_cell(f), l = g.upper_cell(f);
    const double inv_d = 1.0 / g.face_distance(f);
    grad.add(f, l, inv_d);
    grad.add(f, k, -inv_d);
    div.add(k, f, g.face_area(f) / g.cell_volume(k));
    div.add(l, f, -g.face_area(f) / g.cell_volume(l));
    const double w = g.face_area(f) * inv_d;
    poisson.add(k, k, w);
    poisson.add(l, l, w);
    poisson.add(k, l, -w);
    poisson.add(l, k, -w);
  }
  gradient_ = grad.finish();
  divergence_ = div.finish();
  poisson_ = poisson.finish();

  // Stiffness and the momentum pattern: one entry per stencil neighbour.
  CsrBuilder stiff(nf, nf), pattern(nf, nf);
  for (std::size_t f = 0; f < nf; ++f) {
    if (g.is_exterior(f)) {
      pattern.add(f, f, 0.0);
      continue;
    }
    const auto dual = g.dual_faces(g.face_direction(f));
    stiff.add(f, f, 0.0);
    pattern.add(f, f, 0.0);
    for (const auto& entry : g.dual_stencil(f)) {
      const DualFace& e = dual[entry.dual_face];
      const double c = e.area / e.distance;
      stiff.add(f, f, c);
      const std::size_t other = other_side(e, entry.sign);
      if (other != kNoFace && !g.is_exterior(other)) {
        stiff.add(f, other, -c);
        pattern.add(f, other, 0.0);
      }
    }
  }
  stiffness_ = stiff.finish();
  momentum_ = pattern.finish();
}

CsrMatrix OperatorWorkspace::convection_matrix(const VelocityField& a) const {
  const MacGrid& g = *grid_;
  CsrBuilder conv(g.num_faces(), g.num_faces());
  for (std::size_t f = 0; f < g.num_faces(); ++f) {
    if (g.is_exterior(f)) continue;
    const auto dual = g.dual_faces(g.face_direction(f));
    for (const auto& entry : g.dual_stencil(f)) {
      const DualFace& e = dual[entry.dual_face];
      const double half_flux = 0.5 * entry.sign * dual_flux(e, a);
      conv.add(f, f, half_flux);
      const std::size_t other = other_side(e, entry.sign);
      if (other != kNoFace && !g.is_exterior(other)) conv.add(f, other, half_flux);
    }
  }
  return conv.finish();
}

const CsrMatrix& OperatorWorkspace::momentum_matrix(const VelocityField& a, double alpha) {
  const MacGrid& g = *grid_;
  CsrMatrix& m = momentum_;
  std::fill(m.values.begin(), m.values.end(), 0.0);
  const auto nf = static_cast<std::ptrdiff_t>(g.num_faces());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t fi = 0; fi < nf; ++fi) {
    const auto f = static_cast<std::size_t>(fi);
    auto slot = [&](std::size_t col) -> double& {
      const auto first = m.col_idx.begin() + static_cast<std::ptrdiff_t>(m.row_ptr[f]);
      const auto last = m.col_idx.begin() + static_cast<std::ptrdiff_t>(m.row_ptr[f + 1]);
      return m.values[static_cast<std::size_t>(std::lower_bound(first, last, col) - m.col_idx.begin())];
    };
    if (g.is_exterior(f)) {
      slot(f) = 1.0;
      continue;
    }
    const auto dual = g.dual_faces(g.face_direction(f));
    double diag = alpha * g.dual_volume(f);
    for (const auto& entry : g.dual_stencil(f)) {
      const DualFace& e = dual[entry.dual_face];
      const double c = e.area / e.distance;
      const double half_flux = 0.5 * entry.sign * dual_flux(e, a);
      diag += c + half_flux;
      const std::size_t other = other_side(e, entry.sign);
      if (other != kNoFace && !g.is_exterior(other)) slot(other) += -c + half_flux;
    }
    slot(f) += diag;
  }
  return m;
}

}  // namespace macproj
