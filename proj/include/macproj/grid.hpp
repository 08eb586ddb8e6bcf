#pragma once

#include <array>
#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

namespace macproj {

using Point = std::array<double, 3>;
using MultiIndex = std::array<int, 3>;

inline constexpr std::size_t kNoFace = std::numeric_limits<std::size_t>::max();
inline constexpr std::size_t kNoCell = std::numeric_limits<std::size_t>::max();

class GridError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Face of a dual cell. Separates the dual cells of `lower` and `upper`
/// (both faces of the same direction, adjacent along `axis`). On the wall
/// one side is kNoFace and `distance` runs from the face center to the wall.
///
/// The mass flux through it, in +e_axis, is
///   0.5 * (flux_area[0] * a[flux_face[0]] + flux_area[1] * a[flux_face[1]])
/// for an advecting field `a`; missing flux faces contribute nothing.
struct DualFace {
  int axis = 0;
  std::size_t lower = kNoFace;
  std::size_t upper = kNoFace;
  double area = 0.0;
  double distance = 0.0;
  std::array<std::size_t, 2> flux_face{kNoFace, kNoFace};
  std::array<double, 2> flux_area{0.0, 0.0};

  bool exterior() const { return lower == kNoFace || upper == kNoFace; }
};

/// Non-uniform rectangular MAC mesh on a box, with the primal cells, the
/// per-direction face sets and their dual meshes.
///
/// Cells and faces are numbered lexicographically with x fastest. Global
/// face indices run over direction 0 first, then 1, then 2. Immutable once
/// built.
class MacGrid {
 public:
  /// Throws GridError for dim outside {2,3}, fewer than 3 coordinates on an
  /// axis, or non-increasing coordinates.
  static MacGrid build(std::vector<std::vector<double>> axis_coords);

  /// n cells per axis on [0, extent[a]].
  static MacGrid uniform(int dim, int n, std::array<double, 3> extent = {1.0, 1.0, 1.0});

  int dim() const { return dim_; }
  int cells_along(int axis) const { return n_[axis]; }
  std::span<const double> coords(int axis) const { return coords_[axis]; }
  std::span<const double> widths(int axis) const { return widths_[axis]; }
  std::span<const double> centers(int axis) const { return centers_[axis]; }

  std::size_t num_cells() const { return cell_volume_.size(); }
  std::size_t num_faces() const { return face_area_.size(); }
  std::size_t num_faces(int dir) const { return face_offset_[dir + 1] - face_offset_[dir]; }
  std::size_t face_offset(int dir) const { return face_offset_[dir]; }
  MultiIndex face_shape(int dir) const;

  std::size_t cell_index(const MultiIndex& k) const;
  MultiIndex cell_multi(std::size_t c) const;
  std::size_t face_index(int dir, const MultiIndex& k) const;
  int face_direction(std::size_t f) const;
  MultiIndex face_multi(std::size_t f) const;

  double cell_volume(std::size_t c) const { return cell_volume_[c]; }
  Point cell_center(std::size_t c) const;
  double face_area(std::size_t f) const { return face_area_[f]; }
  double dual_volume(std::size_t f) const { return dual_volume_[f]; }
  bool is_exterior(std::size_t f) const { return exterior_[f] != 0; }
  Point face_center(std::size_t f) const;

  /// Cells on the low and high side of a face along its normal. Exterior
  /// faces have one of the two set to kNoCell.
  std::size_t lower_cell(std::size_t f) const { return face_cells_[f][0]; }
  std::size_t upper_cell(std::size_t f) const { return face_cells_[f][1]; }
  /// Center-to-center distance for interior faces, center-to-wall for
  /// exterior ones.
  double face_distance(std::size_t f) const { return face_distance_[f]; }

  /// Faces of cell c, ordered (axis 0 low, axis 0 high, axis 1 low, ...).
  std::array<std::size_t, 6> cell_faces(std::size_t c) const;

  std::span<const DualFace> dual_faces(int dir) const { return dual_faces_[dir]; }

  /// Dual faces bounding D_sigma, with +1 when sigma is their `lower` side.
  struct StencilEntry {
    std::size_t dual_face;
    double sign;
  };
  std::span<const StencilEntry> dual_stencil(std::size_t f) const {
    return {stencil_.data() + stencil_offset_[f], stencil_.data() + stencil_offset_[f + 1]};
  }

  double volume() const { return volume_; }
  double h() const { return h_; }
  double theta() const { return theta_; }

 private:
  MacGrid() = default;

  int dim_ = 0;
  std::array<int, 3> n_{1, 1, 1};
  std::array<std::vector<double>, 3> coords_;
  std::array<std::vector<double>, 3> widths_;
  std::array<std::vector<double>, 3> centers_;

  std::vector<double> cell_volume_;
  std::array<std::size_t, 4> face_offset_{};
  std::vector<double> face_area_;
  std::vector<double> dual_volume_;
  std::vector<double> face_distance_;
  std::vector<char> exterior_;
  std::vector<std::array<std::size_t, 2>> face_cells_;
  std::array<std::vector<DualFace>, 3> dual_faces_;
  std::vector<StencilEntry> stencil_;
  std::vector<std::size_t> stencil_offset_;

  double volume_ = 0.0;
  double h_ = 0.0;
  double theta_ = 1.0;
};

/// Mesh regularity: max over faces of different directions of |sigma|/|sigma'|.
double theta(const MacGrid& grid);

/// Coordinates k/n * length, clustered towards both walls when 0 < stretch < 1.
std::vector<double> graded_coords(int n, double length, double stretch);

}  // namespace macproj
