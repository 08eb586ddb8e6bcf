#include "macproj/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace macproj {

namespace {

// Length of the dual cell of face k along its own normal axis: the two
// half-cells between the neighbouring cell centers (one half at a wall).
double normal_dual_length(std::span<const double> w, int k) {
  const int n = static_cast<int>(w.size());
  if (k == 0) return 0.5 * w[0];
  if (k == n) return 0.5 * w[n - 1];
  return 0.5 * (w[k - 1] + w[k]);
}

}  // namespace

MacGrid MacGrid::build(std::vector<std::vector<double>> axis_coords) {
  const int dim = static_cast<int>(axis_coords.size());
  if (dim != 2 && dim != 3) {
    throw GridError("grid dimension must be 2 or 3, got " + std::to_string(dim));
  }
  MacGrid g;
  g.dim_ = dim;
  for (int a = 0; a < dim; ++a) {
    const auto& x = axis_coords[a];
    if (x.size() < 3) {
      throw GridError("axis " + std::to_string(a) + " needs at least 3 coordinates");
    }
    for (std::size_t k = 0; k + 1 < x.size(); ++k) {
      if (!(x[k + 1] > x[k]) || !std::isfinite(x[k]) || !std::isfinite(x[k + 1])) {
        throw GridError("axis " + std::to_string(a) + " coordinates are not strictly increasing");
      }
    }
    g.n_[a] = static_cast<int>(x.size()) - 1;
    g.coords_[a] = x;
    g.widths_[a].resize(x.size() - 1);
    g.centers_[a].resize(x.size() - 1);
    for (std::size_t k = 0; k + 1 < x.size(); ++k) {
      g.widths_[a][k] = x[k + 1] - x[k];
      g.centers_[a][k] = 0.5 * (x[k] + x[k + 1]);
    }
  }

  // Cells.
  const std::size_t nc = static_cast<std::size_t>(g.n_[0]) * g.n_[1] * g.n_[2];
  g.cell_volume_.resize(nc);
  g.volume_ = 0.0;
  g.h_ = 0.0;
  for (std::size_t c = 0; c < nc; ++c) {
    const MultiIndex k = g.cell_multi(c);
    double vol = 1.0;
    double diam2 = 0.0;
    for (int a = 0; a < dim; ++a) {
      vol *= g.widths_[a][k[a]];
      diam2 += g.widths_[a][k[a]] * g.widths_[a][k[a]];
    }
    g.cell_volume_[c] = vol;
    g.h_ = std::max(g.h_, std::sqrt(diam2));
  }
  g.volume_ = 1.0;
  for (int a = 0; a < dim; ++a) g.volume_ *= g.coords_[a].back() - g.coords_[a].front();

  // Faces.
  g.face_offset_[0] = 0;
  for (int i = 0; i < 3; ++i) {
    std::size_t count = 0;
    if (i < dim) {
      const MultiIndex s = g.face_shape(i);
      count = static_cast<std::size_t>(s[0]) * s[1] * s[2];
    }
    g.face_offset_[i + 1] = g.face_offset_[i] + count;
  }
  const std::size_t nf = g.face_offset_[3];
  g.face_area_.resize(nf);
  g.dual_volume_.resize(nf);
  g.face_distance_.resize(nf);
  g.exterior_.resize(nf);
  g.face_cells_.resize(nf);
  for (std::size_t f = 0; f < nf; ++f) {
    const int i = g.face_direction(f);
    const MultiIndex k = g.face_multi(f);
    double area = 1.0;
    for (int a = 0; a < dim; ++a) {
      if (a != i) area *= g.widths_[a][k[a]];
    }
    const int ki = k[i];
    const bool ext = ki == 0 || ki == g.n_[i];
    g.face_area_[f] = area;
    g.exterior_[f] = ext ? 1 : 0;
    g.dual_volume_[f] = area * normal_dual_length(g.widths_[i], ki);
    g.face_distance_[f] = normal_dual_length(g.widths_[i], ki);
    MultiIndex lo = k;
    lo[i] = ki - 1;
    g.face_cells_[f][0] = ki > 0 ? g.cell_index(lo) : kNoCell;
    g.face_cells_[f][1] = ki < g.n_[i] ? g.cell_index(k) : kNoCell;
  }

  // Dual faces, per direction: by axis, then lexicographic position.
  for (int i = 0; i < dim; ++i) {
    const MultiIndex shape = g.face_shape(i);
    auto& out = g.dual_faces_[i];
    for (int a = 0; a < dim; ++a) {
      // Positions along `a`: dual faces between consecutive faces, plus the
      // two walls when `a` is tangential.
      const int first = (a == i) ? 0 : -1;
      const int last = (a == i) ? shape[a] - 2 : shape[a] - 1;
      MultiIndex range = shape;
      range[a] = last - first + 1;
      for (int k2 = 0; k2 < range[2]; ++k2) {
        for (int k1 = 0; k1 < range[1]; ++k1) {
          for (int k0 = 0; k0 < range[0]; ++k0) {
            MultiIndex k{k0, k1, k2};
            k[a] += first;
            DualFace e;
            e.axis = a;
            MultiIndex up = k;
            up[a] += 1;
            e.lower = k[a] >= 0 ? g.face_index(i, k) : kNoFace;
            e.upper = up[a] < shape[a] ? g.face_index(i, up) : kNoFace;
            if (a == i) {
              const double area = g.face_area_[e.lower];
              e.area = area;
              e.distance = g.widths_[i][k[a]];
              e.flux_face = {e.lower, e.upper};
              e.flux_area = {area, area};
            } else {
              double area = normal_dual_length(g.widths_[i], k[i]);
              for (int b = 0; b < dim; ++b) {
                if (b != a && b != i) area *= g.widths_[b][k[b]];
              }
              e.area = area;
              const auto& wa = g.widths_[a];
              if (e.lower == kNoFace) {
                e.distance = 0.5 * wa.front();
              } else if (e.upper == kNoFace) {
                e.distance = 0.5 * wa.back();
              } else {
                e.distance = 0.5 * (wa[k[a]] + wa[k[a] + 1]);
              }
              // Primal faces normal to e_a on the plane of this dual face,
              // belonging to the cells on either side of sigma.
              for (int side = 0; side < 2; ++side) {
                MultiIndex t = k;
                t[a] = k[a] + 1;
                t[i] = k[i] - 1 + side;
                if (t[i] < 0 || t[i] >= g.n_[i]) continue;
                const std::size_t tf = g.face_index(a, t);
                e.flux_face[side] = tf;
                e.flux_area[side] = g.face_area_[tf];
              }
            }
            out.push_back(e);
          }
        }
      }
    }
  }

  // Stencils: dual faces bounding each dual cell.
  std::vector<std::vector<StencilEntry>> per_face(nf);
  for (int i = 0; i < dim; ++i) {
    const auto& list = g.dual_faces_[i];
    for (std::size_t e = 0; e < list.size(); ++e) {
      if (list[e].lower != kNoFace) per_face[list[e].lower].push_back({e, 1.0});
      if (list[e].upper != kNoFace) per_face[list[e].upper].push_back({e, -1.0});
    }
  }
  g.stencil_offset_.assign(nf + 1, 0);
  for (std::size_t f = 0; f < nf; ++f) {
    g.stencil_offset_[f + 1] = g.stencil_offset_[f] + per_face[f].size();
    g.stencil_.insert(g.stencil_.end(), per_face[f].begin(), per_face[f].end());
  }

  g.theta_ = macproj::theta(g);
  return g;
}

MacGrid MacGrid::uniform(int dim, int n, std::array<double, 3> extent) {
  if (dim != 2 && dim != 3) throw GridError("dimension must be 2 or 3");
  if (n < 2) throw GridError("uniform grid needs at least 2 cells per axis");
  std::vector<std::vector<double>> coords;
  for (int a = 0; a < dim; ++a) coords.push_back(graded_coords(n, extent[a], 0.0));
  return build(std::move(coords));
}

MultiIndex MacGrid::face_shape(int dir) const {
  MultiIndex s{1, 1, 1};
  for (int a = 0; a < dim_; ++a) s[a] = n_[a] + (a == dir ? 1 : 0);
  return s;
}

std::size_t MacGrid::cell_index(const MultiIndex& k) const {
  return static_cast<std::size_t>(k[0]) +
         static_cast<std::size_t>(n_[0]) * (k[1] + static_cast<std::size_t>(n_[1]) * k[2]);
}

MultiIndex MacGrid::cell_multi(std::size_t c) const {
  MultiIndex k{0, 0, 0};
  k[0] = static_cast<int>(c % n_[0]);
  c /= n_[0];
  k[1] = static_cast<int>(c % n_[1]);
  k[2] = static_cast<int>(c / n_[1]);
  return k;
}

std::size_t MacGrid::face_index(int dir, const MultiIndex& k) const {
  const MultiIndex s = face_shape(dir);
  return face_offset_[dir] + static_cast<std::size_t>(k[0]) +
         static_cast<std::size_t>(s[0]) * (k[1] + static_cast<std::size_t>(s[1]) * k[2]);
}

int MacGrid::face_direction(std::size_t f) const {
  if (f < face_offset_[1]) return 0;
  if (f < face_offset_[2]) return 1;
  return 2;
}

MultiIndex MacGrid::face_multi(std::size_t f) const {
  const int dir = face_direction(f);
  const MultiIndex s = face_shape(dir);
  std::size_t r = f - face_offset_[dir];
  MultiIndex k{0, 0, 0};
  k[0] = static_cast<int>(r % s[0]);
  r /= s[0];
  k[1] = static_cast<int>(r % s[1]);
  k[2] = static_cast<int>(r / s[1]);
  return k;
}

Point MacGrid::cell_center(std::size_t c) const {
  const MultiIndex k = cell_multi(c);
  Point x{0.0, 0.0, 0.0};
  for (int a = 0; a < dim_; ++a) x[a] = centers_[a][k[a]];
  return x;
}

Point MacGrid::face_center(std::size_t f) const {
  const int dir = face_direction(f);
  const MultiIndex k = face_multi(f);
  Point x{0.0, 0.0, 0.0};
  for (int a = 0; a < dim_; ++a) x[a] = (a == dir) ? coords_[a][k[a]] : centers_[a][k[a]];
  return x;
}

std::array<std::size_t, 6> MacGrid::cell_faces(std::size_t c) const {
  std::array<std::size_t, 6> out{kNoFace, kNoFace, kNoFace, kNoFace, kNoFace, kNoFace};
  const MultiIndex k = cell_multi(c);
  for (int a = 0; a < dim_; ++a) {
    MultiIndex hi = k;
    hi[a] += 1;
    out[2 * a] = face_index(a, k);
    out[2 * a + 1] = face_index(a, hi);
  }
  return out;
}

double theta(const MacGrid& grid) {
  const int dim = grid.dim();
  std::array<double, 3> amin{}, amax{};
  for (int i = 0; i < dim; ++i) {
    amin[i] = std::numeric_limits<double>::infinity();
    amax[i] = 0.0;
    const std::size_t off = grid.face_offset(i);
    for (std::size_t f = off; f < off + grid.num_faces(i); ++f) {
      amin[i] = std::min(amin[i], grid.face_area(f));
      amax[i] = std::max(amax[i], grid.face_area(f));
    }
  }
  double t = 0.0;
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      if (i != j) t = std::max(t, amax[i] / amin[j]);
    }
  }
  return t;
}

std::vector<double> graded_coords(int n, double length, double stretch) {
  if (n < 1) throw GridError("axis needs at least one cell");
  if (!(length > 0.0)) throw GridError("axis length must be positive");
  if (!(stretch >= 0.0 && stretch < 1.0)) throw GridError("stretch must lie in [0, 1)");
  std::vector<double> x(n + 1);
  for (int k = 0; k <= n; ++k) {
    const double s = static_cast<double>(k) / n;
    x[k] = length * (s - stretch * std::sin(2.0 * std::numbers::pi * s) / (2.0 * std::numbers::pi));
  }
  x.front() = 0.0;
  x.back() = length;
  return x;
}

}  // namespace macproj
