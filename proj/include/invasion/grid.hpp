#pragma once

#include <array>
#include <cstddef>
#include <span>

namespace invasion {

inline constexpr int kMaxDims = 3;

/// Uniform cell-centred box mesh in one to three dimensions.
///
/// Unused trailing dimensions have one cell of unit spacing so that
/// row-major indexing works the same way for every dimension count.
/// Cell (i0, i1, i2) lives at linear index (i0 * n1 + i1) * n2 + i2.
struct Grid {
  int dims = 1;
  std::array<int, kMaxDims> cells{1, 1, 1};
  std::array<double, kMaxDims> spacing{1.0, 1.0, 1.0};
  std::array<double, kMaxDims> origin{0.0, 0.0, 0.0};

  std::size_t cell_count() const {
    return static_cast<std::size_t>(cells[0]) * cells[1] * cells[2];
  }
  double cell_volume() const;
  /// |Omega|.
  double volume() const;
  double extent(int dim) const { return cells[dim] * spacing[dim]; }
  double min_spacing() const;

  /// Distance between consecutive linear indices along `dim`.
  std::size_t stride(int dim) const;
  /// Coordinate of cell `index` along `dim`.
  int coord(std::size_t index, int dim) const;
  /// Cell-centre position along `dim` of cell `index`.
  double center(std::size_t index, int dim) const;

  /// Number of faces normal to `dim` (cells + 1 along `dim`).
  std::size_t face_count(int dim) const;
  /// Index of the face on the low side of cell `index` along `dim`;
  /// the high-side face is `left_face(index, dim) + stride(dim)`.
  std::size_t left_face(std::size_t index, int dim) const;

  bool operator==(const Grid&) const = default;
};

/// Builds a grid with spacing extent/cells per dimension.
/// Throws ValidationError for dims outside {1,2,3}, fewer than 3 cells in
/// any dimension, non-positive extents, or mismatched argument lengths.
Grid build_grid(int dims, std::span<const int> cells,
                std::span<const double> extents,
                std::span<const double> origin = {});

}  // namespace invasion
