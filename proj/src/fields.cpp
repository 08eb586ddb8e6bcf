#include "macproj/fields.hpp"

#include <cmath>
#include <stdexcept>

#include "macproj/parallel.hpp"
#include "macproj/quadrature.hpp"

namespace macproj {

PressureField::PressureField(GridPtr grid) : grid_(std::move(grid)) {
  values_.assign(grid_->num_cells(), 0.0);
}

PressureField::PressureField(GridPtr grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (values_.size() != grid_->num_cells()) {
    throw std::invalid_argument("pressure field size does not match the cell count");
  }
}

double PressureField::integral() const {
  const MacGrid& g = *grid_;
  return par::blocked_sum(values_.size(), [&](std::size_t c) { return g.cell_volume(c) * values_[c]; });
}

void PressureField::remove_mean() {
  const double mean = integral() / grid_->volume();
  for (double& v : values_) v -= mean;
}

PressureField& PressureField::operator+=(const PressureField& o) {
  for (std::size_t c = 0; c < values_.size(); ++c) values_[c] += o.values_[c];
  return *this;
}

PressureField& PressureField::operator-=(const PressureField& o) {
  for (std::size_t c = 0; c < values_.size(); ++c) values_[c] -= o.values_[c];
  return *this;
}

PressureField& PressureField::operator*=(double s) {
  for (double& v : values_) v *= s;
  return *this;
}

VelocityField::VelocityField(GridPtr grid) : grid_(std::move(grid)) {
  values_.assign(grid_->num_faces(), 0.0);
}

VelocityField::VelocityField(GridPtr grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (values_.size() != grid_->num_faces()) {
    throw std::invalid_argument("velocity field size does not match the face count");
  }
}

std::span<const double> VelocityField::component(int dir) const {
  return std::span<const double>(values_).subspan(grid_->face_offset(dir), grid_->num_faces(dir));
}

void VelocityField::zero_exterior() {
  for (std::size_t f = 0; f < values_.size(); ++f) {
    if (grid_->is_exterior(f)) values_[f] = 0.0;
  }
}

bool VelocityField::exterior_is_zero() const {
  for (std::size_t f = 0; f < values_.size(); ++f) {
    if (grid_->is_exterior(f) && values_[f] != 0.0) return false;
  }
  return true;
}

VelocityField& VelocityField::operator+=(const VelocityField& o) {
  for (std::size_t f = 0; f < values_.size(); ++f) values_[f] += o.values_[f];
  return *this;
}

VelocityField& VelocityField::operator-=(const VelocityField& o) {
  for (std::size_t f = 0; f < values_.size(); ++f) values_[f] -= o.values_[f];
  return *this;
}

VelocityField& VelocityField::operator*=(double s) {
  for (double& v : values_) v *= s;
  return *this;
}

PressureField operator+(PressureField a, const PressureField& b) { return a += b; }
PressureField operator-(PressureField a, const PressureField& b) { return a -= b; }
PressureField operator*(double s, PressureField a) { return a *= s; }
VelocityField operator+(VelocityField a, const VelocityField& b) { return a += b; }
VelocityField operator-(VelocityField a, const VelocityField& b) { return a -= b; }
VelocityField operator*(double s, VelocityField a) { return a *= s; }

namespace {

// Tensor Gauss mean over the box [lo, hi], skipping axes where lo == hi.
template <class F>
double box_mean(int dim, const Point& lo, const Point& hi, F&& f) {
  std::array<int, 3> count{1, 1, 1};
  for (int a = 0; a < dim; ++a) count[a] = (hi[a] > lo[a]) ? quad::kPoints : 1;
  double sum = 0.0;
  for (int q2 = 0; q2 < count[2]; ++q2) {
    for (int q1 = 0; q1 < count[1]; ++q1) {
      for (int q0 = 0; q0 < count[0]; ++q0) {
        const std::array<int, 3> q{q0, q1, q2};
        Point x{0.0, 0.0, 0.0};
        double w = 1.0;
        for (int a = 0; a < dim; ++a) {
          if (count[a] == 1) {
            x[a] = lo[a];
          } else {
            x[a] = quad::map(lo[a], hi[a], q[a]);
            w *= quad::mean_weight(q[a]);
          }
        }
        sum += w * f(x);
      }
    }
  }
  return sum;
}

}  // namespace

VelocityField fortin_interpolate(const GridPtr& grid, const VectorFunction& v) {
  VelocityField out(grid);
  const MacGrid& g = *grid;
  const auto nf = static_cast<std::ptrdiff_t>(g.num_faces());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t fi = 0; fi < nf; ++fi) {
    const auto f = static_cast<std::size_t>(fi);
    if (g.is_exterior(f)) continue;
    const int dir = g.face_direction(f);
    const MultiIndex k = g.face_multi(f);
    Point lo{0.0, 0.0, 0.0}, hi{0.0, 0.0, 0.0};
    for (int a = 0; a < g.dim(); ++a) {
      if (a == dir) {
        lo[a] = hi[a] = g.coords(a)[k[a]];
      } else {
        lo[a] = g.coords(a)[k[a]];
        hi[a] = g.coords(a)[k[a] + 1];
      }
    }
    out[f] = box_mean(g.dim(), lo, hi, [&](const Point& x) { return v(x)[dir]; });
  }
  return out;
}

PressureField cell_average(const GridPtr& grid, const ScalarFunction& q) {
  PressureField out(grid);
  const MacGrid& g = *grid;
  const auto nc = static_cast<std::ptrdiff_t>(g.num_cells());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t ci = 0; ci < nc; ++ci) {
    const auto c = static_cast<std::size_t>(ci);
    const MultiIndex k = g.cell_multi(c);
    Point lo{0.0, 0.0, 0.0}, hi{0.0, 0.0, 0.0};
    for (int a = 0; a < g.dim(); ++a) {
      lo[a] = g.coords(a)[k[a]];
      hi[a] = g.coords(a)[k[a] + 1];
    }
    out[c] = box_mean(g.dim(), lo, hi, q);
  }
  return out;
}

double inner(const PressureField& p, const PressureField& q) {
  const MacGrid& g = p.grid();
  return par::blocked_sum(p.size(), [&](std::size_t c) { return g.cell_volume(c) * p[c] * q[c]; });
}

double inner(const VelocityField& u, const VelocityField& v) {
  const MacGrid& g = u.grid();
  return par::blocked_sum(u.size(), [&](std::size_t f) { return g.dual_volume(f) * u[f] * v[f]; });
}

double l2_norm(const PressureField& p) { return std::sqrt(inner(p, p)); }
double l2_norm(const VelocityField& u) { return std::sqrt(inner(u, u)); }

double w1q_norm(const VelocityField& v, int q) {
  if (q < 1) throw std::invalid_argument("w1q_norm: q must be >= 1");
  const MacGrid& g = v.grid();
  double sum = 0.0;
  for (int i = 0; i < g.dim(); ++i) {
    const auto faces = g.dual_faces(i);
    sum += par::blocked_sum(faces.size(), [&](std::size_t e) {
      const DualFace& d = faces[e];
      const double lo = d.lower == kNoFace ? 0.0 : v[d.lower];
      const double hi = d.upper == kNoFace ? 0.0 : v[d.upper];
      const double jump = std::abs(hi - lo);
      if (q == 2) return d.area * jump * jump / d.distance;
      return d.area * std::pow(jump, q) / std::pow(d.distance, q - 1);
    });
  }
  return std::pow(sum, 1.0 / q);
}

TrajectoryNorms trajectory_norms(const Trajectory& traj) {
  TrajectoryNorms out;
  double h1 = 0.0, coupling = 0.0;
  for (const Snapshot& s : traj.steps) {
    const double w = w1q_norm(s.u_tilde, 2);
    h1 += traj.dt * w * w;
    out.corrected_linf_l2 = std::max(out.corrected_linf_l2, l2_norm(s.u));
    const double c = l2_norm(s.u - s.u_tilde);
    coupling += traj.dt * c * c;
  }
  out.predicted_h1 = std::sqrt(h1);
  out.coupling_l2l2 = std::sqrt(coupling);
  return out;
}

}  // namespace macproj
