#include "invasion/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "invasion/error.hpp"

namespace invasion {

double Grid::cell_volume() const {
  double vol = 1.0;
  for (int d = 0; d < dims; ++d) vol *= spacing[d];
  return vol;
}

double Grid::volume() const {
  double vol = 1.0;
  for (int d = 0; d < dims; ++d) vol *= extent(d);
  return vol;
}

double Grid::min_spacing() const {
  double h = spacing[0];
  for (int d = 1; d < dims; ++d) h = std::min(h, spacing[d]);
  return h;
}

std::size_t Grid::stride(int dim) const {
  std::size_t s = 1;
  for (int d = dim + 1; d < kMaxDims; ++d) s *= static_cast<std::size_t>(cells[d]);
  return s;
}

int Grid::coord(std::size_t index, int dim) const {
  return static_cast<int>((index / stride(dim)) % static_cast<std::size_t>(cells[dim]));
}

double Grid::center(std::size_t index, int dim) const {
  return origin[dim] + (coord(index, dim) + 0.5) * spacing[dim];
}

std::size_t Grid::face_count(int dim) const {
  return cell_count() / static_cast<std::size_t>(cells[dim]) *
         (static_cast<std::size_t>(cells[dim]) + 1);
}

std::size_t Grid::left_face(std::size_t index, int dim) const {
  const std::size_t inner = stride(dim);
  const auto n = static_cast<std::size_t>(cells[dim]);
  const std::size_t rest = index % inner;
  const std::size_t tmp = index / inner;
  const std::size_t i = tmp % n;
  const std::size_t outer = tmp / n;
  return (outer * (n + 1) + i) * inner + rest;
}

Grid build_grid(int dims, std::span<const int> cells,
                std::span<const double> extents,
                std::span<const double> origin) {
  if (dims < 1 || dims > kMaxDims)
    throw ValidationError("grid dims must be 1, 2 or 3 (got " + std::to_string(dims) + ")");
  if (cells.size() != static_cast<std::size_t>(dims) ||
      extents.size() != static_cast<std::size_t>(dims))
    throw ValidationError("grid needs one cell count and one extent per dimension");
  if (!origin.empty() && origin.size() != static_cast<std::size_t>(dims))
    throw ValidationError("grid origin needs one coordinate per dimension");

  Grid g;
  g.dims = dims;
  for (int d = 0; d < dims; ++d) {
    if (cells[d] < 3)
      throw ValidationError("grid needs at least 3 cells per dimension (dim " +
                            std::to_string(d) + " has " + std::to_string(cells[d]) + ")");
    if (!(extents[d] > 0.0) || !std::isfinite(extents[d]))
      throw ValidationError("grid extents must be positive and finite");
    g.cells[d] = cells[d];
    g.spacing[d] = extents[d] / cells[d];
    g.origin[d] = origin.empty() ? 0.0 : origin[d];
  }
  return g;
}

}  // namespace invasion
