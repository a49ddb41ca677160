#include "invasion/field.hpp"

#include <algorithm>
#include <cmath>

#include "invasion/error.hpp"

namespace invasion {

namespace {

void require_same_grid(const Grid& a, const Grid& b) {
  if (!(a == b)) throw ValidationError("fields live on different grids");
}

}  // namespace

ScalarField::ScalarField(const Grid& grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.cell_count())
    throw ValidationError("field value count does not match the grid cell count");
}

double ScalarField::min() const { return *std::min_element(values_.begin(), values_.end()); }
double ScalarField::max() const { return *std::max_element(values_.begin(), values_.end()); }

bool ScalarField::all_finite() const {
  return std::all_of(values_.begin(), values_.end(), [](double x) { return std::isfinite(x); });
}

double ScalarField::integral() const {
  double s = 0.0;
  for (double x : values_) s += x;
  return s * grid_.cell_volume();
}

ScalarField& ScalarField::operator+=(const ScalarField& o) {
  require_same_grid(grid_, o.grid_);
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += o.values_[i];
  return *this;
}

ScalarField& ScalarField::operator-=(const ScalarField& o) {
  require_same_grid(grid_, o.grid_);
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= o.values_[i];
  return *this;
}

ScalarField& ScalarField::operator*=(double s) {
  for (double& x : values_) x *= s;
  return *this;
}

ScalarField operator+(ScalarField a, const ScalarField& b) { return a += b; }
ScalarField operator-(ScalarField a, const ScalarField& b) { return a -= b; }
ScalarField operator*(ScalarField a, double s) { return a *= s; }
ScalarField operator*(double s, ScalarField a) { return a *= s; }

ScalarField hadamard(ScalarField a, const ScalarField& b) {
  require_same_grid(a.grid(), b.grid());
  for (std::size_t i = 0; i < a.size(); ++i) a[i] *= b[i];
  return a;
}

VectorField::VectorField(const Grid& grid) : grid_(grid) {
  for (int d = 0; d < grid.dims; ++d) faces_[d].assign(grid.face_count(d), 0.0);
}

double VectorField::max_abs() const {
  double m = 0.0;
  for (const auto& c : faces_)
    for (double x : c) m = std::max(m, std::abs(x));
  return m;
}

bool VectorField::all_finite() const {
  for (const auto& c : faces_)
    for (double x : c)
      if (!std::isfinite(x)) return false;
  return true;
}

VectorField& VectorField::operator+=(const VectorField& o) {
  require_same_grid(grid_, o.grid_);
  for (int d = 0; d < grid_.dims; ++d)
    for (std::size_t i = 0; i < faces_[d].size(); ++i) faces_[d][i] += o.faces_[d][i];
  return *this;
}

VectorField& VectorField::operator*=(double s) {
  for (auto& c : faces_)
    for (double& x : c) x *= s;
  return *this;
}

}  // namespace invasion
