#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "invasion/dynamics.hpp"
#include "invasion/model.hpp"

namespace invasion {

/// Which set of hypotheses a scenario is meant to satisfy.
enum class Regime { theorem_bound3, theorem_bound5, mu_zero_conservation, byrne_baseline, custom };

std::string to_string(Regime r);
/// Throws ValidationError for unknown names.
Regime regime_from_string(const std::string& s);

/// Initial profile of one field.
struct InitialProfile {
  enum class Kind { constant, gaussian_bump, tabulated };
  Kind kind = Kind::constant;
  /// constant value, or the bump's baseline.
  double offset = 0.0;
  /// offset + amplitude exp(-|x - center|^2 / width^2)
  std::array<double, 3> center{0.0, 0.0, 0.0};
  double width = 1.0;
  double amplitude = 0.0;
  /// Piecewise-linear in the first coordinate, flat beyond the end nodes.
  std::vector<double> nodes;
  std::vector<double> node_values;
  /// Amplitude of a uniform random perturbation in [-noise, noise], clamped
  /// so the field stays >= 0.
  double noise = 0.0;

  static InitialProfile constant(double c);
  static InitialProfile gaussian(std::array<double, 3> center, double width, double amplitude,
                                 double offset);
  static InitialProfile tabulated(std::vector<double> x, std::vector<double> y);

  bool operator==(const InitialProfile&) const = default;
};

struct InitialData {
  InitialProfile u0 = InitialProfile::constant(0.0);
  InitialProfile v0 = InitialProfile::constant(0.0);
  InitialProfile m0 = InitialProfile::constant(0.0);
  std::uint64_t seed = 0;

  bool operator==(const InitialData&) const = default;
};

struct Scenario {
  std::string name = "custom";
  ModelParams params;
  InitialData initial;
  Grid grid;
  StepperConfig stepper;
  Regime regime = Regime::custom;
  /// Formulation the run integrates in.
  Formulation formulation = Formulation::original_uvm;

  bool operator==(const Scenario&) const = default;
};

/// Samples one profile at the cell centres (noise excluded).
ScalarField sample_profile(const InitialProfile& p, const Grid& grid);

/// Initial (u, v, m) state in the scenario's formulation, noise applied
/// deterministically from the seed.
SimState initial_state(const Scenario& s);

/// Checks parameters, stepper and the regime hypotheses on the sampled
/// initial data. Throws ValidationError naming the violated hypothesis.
void validate_scenario(const Scenario& s);

/// Built-in scenarios: theorem_bound3, theorem_bound5,
/// mu_zero_conservation, byrne_baseline, pure_diffusion,
/// upwind_convergence.
std::vector<Scenario> presets();
/// Throws ValidationError for unknown names.
Scenario preset(const std::string& name);

}  // namespace invasion
