#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "invasion/grid.hpp"

namespace invasion {

/// One value per cell, row-major over the grid.
class ScalarField {
 public:
  ScalarField() = default;
  explicit ScalarField(const Grid& grid, double fill = 0.0)
      : grid_(grid), values_(grid.cell_count(), fill) {}
  ScalarField(const Grid& grid, std::vector<double> values);

  const Grid& grid() const { return grid_; }
  std::size_t size() const { return values_.size(); }

  double& operator[](std::size_t i) { return values_[i]; }
  double operator[](std::size_t i) const { return values_[i]; }

  std::span<double> values() { return values_; }
  std::span<const double> values() const { return values_; }

  double min() const;
  double max() const;
  bool all_finite() const;
  /// Sum of values times cell volume.
  double integral() const;
  /// Volume-weighted mean.
  double mean() const { return integral() / grid_.volume(); }

  ScalarField& operator+=(const ScalarField& o);
  ScalarField& operator-=(const ScalarField& o);
  ScalarField& operator*=(double s);

  bool operator==(const ScalarField&) const = default;

 private:
  Grid grid_;
  std::vector<double> values_;
};

ScalarField operator+(ScalarField a, const ScalarField& b);
ScalarField operator-(ScalarField a, const ScalarField& b);
ScalarField operator*(ScalarField a, double s);
ScalarField operator*(double s, ScalarField a);
/// Cellwise product.
ScalarField hadamard(ScalarField a, const ScalarField& b);

/// Face-staggered field: component d holds one value per face normal to d.
/// A no-flux field has zeros on every boundary face.
class VectorField {
 public:
  VectorField() = default;
  explicit VectorField(const Grid& grid);

  const Grid& grid() const { return grid_; }
  std::vector<double>& component(int d) { return faces_[d]; }
  const std::vector<double>& component(int d) const { return faces_[d]; }

  /// Largest |value| over every face of every component.
  double max_abs() const;
  bool all_finite() const;

  VectorField& operator+=(const VectorField& o);
  VectorField& operator*=(double s);

  bool operator==(const VectorField&) const = default;

 private:
  Grid grid_;
  std::array<std::vector<double>, kMaxDims> faces_;
};

}  // namespace invasion
