#include "invasion/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "invasion/error.hpp"
#include "invasion/text.hpp"

namespace invasion {

std::string to_string(Regime r) {
  switch (r) {
    case Regime::theorem_bound3: return "theorem_bound3";
    case Regime::theorem_bound5: return "theorem_bound5";
    case Regime::mu_zero_conservation: return "mu_zero_conservation";
    case Regime::byrne_baseline: return "byrne_baseline";
    case Regime::custom: return "custom";
  }
  return "custom";
}

Regime regime_from_string(const std::string& s) {
  for (Regime r : {Regime::theorem_bound3, Regime::theorem_bound5, Regime::mu_zero_conservation,
                   Regime::byrne_baseline, Regime::custom})
    if (to_string(r) == s) return r;
  throw ValidationError("unknown regime '" + s + "'");
}

InitialProfile InitialProfile::constant(double c) {
  InitialProfile p;
  p.kind = Kind::constant;
  p.offset = c;
  return p;
}

InitialProfile InitialProfile::gaussian(std::array<double, 3> center, double width,
                                        double amplitude, double offset) {
  InitialProfile p;
  p.kind = Kind::gaussian_bump;
  p.center = center;
  p.width = width;
  p.amplitude = amplitude;
  p.offset = offset;
  return p;
}

InitialProfile InitialProfile::tabulated(std::vector<double> x, std::vector<double> y) {
  InitialProfile p;
  p.kind = Kind::tabulated;
  p.nodes = std::move(x);
  p.node_values = std::move(y);
  return p;
}

namespace {

void check_profile(const InitialProfile& p, const char* field) {
  const std::string f(field);
  if (p.kind == InitialProfile::Kind::gaussian_bump && !(p.width > 0.0))
    throw ValidationError(f + ": gaussian width must be > 0");
  if (p.kind == InitialProfile::Kind::tabulated) {
    if (p.nodes.size() < 2 || p.nodes.size() != p.node_values.size())
      throw ValidationError(f + ": tabulated profile needs >= 2 nodes and one value per node");
    for (std::size_t k = 1; k < p.nodes.size(); ++k)
      if (!(p.nodes[k] > p.nodes[k - 1]))
        throw ValidationError(f + ": tabulated nodes must be strictly increasing");
  }
  if (p.noise < 0.0) throw ValidationError(f + ": noise amplitude must be >= 0");
}

double eval_profile(const InitialProfile& p, const Grid& g, std::size_t cell) {
  switch (p.kind) {
    case InitialProfile::Kind::constant:
      return p.offset;
    case InitialProfile::Kind::gaussian_bump: {
      double r2 = 0.0;
      for (int d = 0; d < g.dims; ++d) {
        const double dx = g.center(cell, d) - p.center[d];
        r2 += dx * dx;
      }
      return p.offset + p.amplitude * std::exp(-r2 / (p.width * p.width));
    }
    case InitialProfile::Kind::tabulated: {
      const double x = g.center(cell, 0);
      if (x <= p.nodes.front()) return p.node_values.front();
      if (x >= p.nodes.back()) return p.node_values.back();
      const auto k = static_cast<std::size_t>(
          std::upper_bound(p.nodes.begin(), p.nodes.end(), x) - p.nodes.begin() - 1);
      const double t = (x - p.nodes[k]) / (p.nodes[k + 1] - p.nodes[k]);
      return p.node_values[k] + t * (p.node_values[k + 1] - p.node_values[k]);
    }
  }
  return 0.0;
}

ScalarField sample_with_noise(const InitialProfile& p, const Grid& g, std::uint64_t seed,
                              std::uint64_t stream) {
  ScalarField f = sample_profile(p, g);
  if (p.noise > 0.0) {
    std::mt19937_64 rng(seed * 0x9E3779B97F4A7C15ULL + stream);
    for (std::size_t i = 0; i < f.size(); ++i) {
      const double unit = static_cast<double>(rng() >> 11) * 0x1.0p-53;
      f[i] = std::max(0.0, f[i] + p.noise * (2.0 * unit - 1.0));
    }
  }
  return f;
}

}  // namespace

ScalarField sample_profile(const InitialProfile& p, const Grid& grid) {
  ScalarField f(grid);
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = eval_profile(p, grid, i);
  return f;
}

SimState initial_state(const Scenario& s) {
  SimState st = make_state(sample_with_noise(s.initial.u0, s.grid, s.initial.seed, 1),
                           sample_with_noise(s.initial.v0, s.grid, s.initial.seed, 2),
                           sample_with_noise(s.initial.m0, s.grid, s.initial.seed, 3));
  return in_formulation(st, s.params, s.formulation);
}

void validate_scenario(const Scenario& s) {
  validate_params(s.params);
  validate_stepper(s.stepper);
  if (s.grid.dims < 1 || s.grid.dims > 3) throw ValidationError("grid dims must be 1, 2 or 3");
  for (int d = 0; d < s.grid.dims; ++d)
    if (s.grid.cells[d] < 3 || !(s.grid.spacing[d] > 0.0))
      throw ValidationError("grid needs >= 3 cells and positive spacing per dimension");
  check_profile(s.initial.u0, "u0");
  check_profile(s.initial.v0, "v0");
  check_profile(s.initial.m0, "m0");

  const SimState st = initial_state(s);
  const ScalarField u0 = cell_density(st, s.params);
  if (u0.min() < 0.0 || st.v.min() < 0.0 || st.m.min() < 0.0)
    throw ValidationError("initial data must be nonnegative");
  if (!u0.all_finite() || !st.v.all_finite() || !st.m.all_finite())
    throw ValidationError("initial data must be finite");

  const std::string regime = to_string(s.regime);
  const auto& p = s.params;
  switch (s.regime) {
    case Regime::theorem_bound3:
      if (!(p.mu > 0.0)) throw ValidationError("mu must be > 0 for regime " + regime);
      if (!p.g.positive_floor)
        throw ValidationError("g must satisfy g(v) >= M > 0 for regime " + regime);
      if (!(st.v.min() > 0.0 && st.v.max() < 1.0))
        throw ValidationError("v0 must satisfy 0<v0<1 for regime " + regime);
      if (!(u0.min() > 0.0)) throw ValidationError("u0 must satisfy u0 >= a > 0 for regime " + regime);
      break;
    case Regime::theorem_bound5:
      if (!(p.mu > 0.0)) throw ValidationError("mu must be > 0 for regime " + regime);
      if (!(p.g.family == FunctionSpec::Family::affine && p.g.p0 == 0.0 && p.g.p1 > 0.0))
        throw ValidationError("g must be affine(0, c) with c > 0 (g(0)=0, g(v) >= c v) for regime " +
                              regime);
      break;
    case Regime::mu_zero_conservation:
      if (p.mu != 0.0) throw ValidationError("mu must be 0 for regime " + regime);
      break;
    case Regime::byrne_baseline:
      if (p.chi.family != FunctionSpec::Family::constant)
        throw ValidationError("chi must be constant for regime " + regime);
      if (!(p.g == FunctionSpec::affine(0.0, 1.0)))
        throw ValidationError("g must be affine(0, 1), i.e. g(v)=v, for regime " + regime);
      break;
    case Regime::custom:
      break;
  }
}

namespace {

Grid unit_line(int cells) {
  const int c[] = {cells};
  const double e[] = {1.0};
  return build_grid(1, c, e);
}

Scenario theorem_bound3() {
  Scenario s;
  s.name = "theorem_bound3";
  s.regime = Regime::theorem_bound3;
  s.params.d = 1.0;
  s.params.gamma = 1.0;
  s.params.mu = 1.0;
  s.params.chi = FunctionSpec::constant(0.5);
  s.params.g = FunctionSpec::affine(1.0, 1.0);
  s.grid = unit_line(128);
  s.initial.u0 = InitialProfile::gaussian({0.5, 0.0, 0.0}, 0.1, 0.2, 1.0);
  s.initial.v0 = InitialProfile::gaussian({0.5, 0.0, 0.0}, 0.1, 0.3, 0.5);
  s.initial.m0 = InitialProfile::constant(0.1);
  s.stepper.t_end = 40.0;
  s.stepper.record_every = s.stepper.t_end / 400.0;
  s.stepper.dt_max = 0.01;
  s.stepper.cfl = 0.5;
  return s;
}

Scenario theorem_bound5() {
  Scenario s = theorem_bound3();
  s.name = "theorem_bound5";
  s.regime = Regime::theorem_bound5;
  s.params.g = FunctionSpec::affine(0.0, 1.0);
  s.stepper.t_end = 60.0;
  s.stepper.record_every = s.stepper.t_end / 400.0;
  return s;
}

Scenario mu_zero_conservation() {
  Scenario s = theorem_bound3();
  s.name = "mu_zero_conservation";
  s.regime = Regime::mu_zero_conservation;
  s.params.mu = 0.0;
  s.params.chi = FunctionSpec::constant(1.0);
  s.params.g = FunctionSpec::affine(0.0, 1.0);
  s.stepper.t_end = 5.0;
  s.stepper.record_every = s.stepper.t_end / 400.0;
  return s;
}

Scenario byrne_baseline() {
  Scenario s;
  s.name = "byrne_baseline";
  s.regime = Regime::byrne_baseline;
  s.params.d = 1.0;
  s.params.gamma = 1.0;
  s.params.mu = 1.0;
  s.params.chi = FunctionSpec::constant(1.0);
  s.params.g = FunctionSpec::affine(0.0, 1.0);
  s.grid = unit_line(128);
  // Cells seeded at the left wall invade an intact matrix.
  s.initial.u0 = InitialProfile::gaussian({0.0, 0.0, 0.0}, 0.1, 1.0, 0.0);
  s.initial.v0 = InitialProfile::constant(1.0);
  s.initial.m0 = InitialProfile::constant(0.0);
  s.stepper.t_end = 10.0;
  s.stepper.record_every = s.stepper.t_end / 400.0;
  s.stepper.dt_max = 0.01;
  return s;
}

// Heat equations only; exercises the second-order spatial stencil.
Scenario pure_diffusion() {
  Scenario s;
  s.name = "pure_diffusion";
  s.regime = Regime::custom;
  s.params.d = 1.0;
  s.params.gamma = 1.0;
  s.params.mu = 0.0;
  s.params.chi = FunctionSpec::constant(0.0);
  s.params.g = FunctionSpec::constant(0.0);
  s.grid = unit_line(16);
  s.initial.u0 = InitialProfile::gaussian({0.5, 0.0, 0.0}, 0.2, 1.0, 0.5);
  s.initial.v0 = InitialProfile::constant(0.5);
  s.initial.m0 = InitialProfile::gaussian({0.4, 0.0, 0.0}, 0.2, 0.5, 0.1);
  s.stepper.t_end = 0.02;
  s.stepper.record_every = s.stepper.t_end;
  s.stepper.dt_max = 1e-5;
  s.stepper.flux = FluxMode::centered;
  return s;
}

// Full coupled system with the donor-cell flux; first order.
Scenario upwind_convergence() {
  Scenario s = theorem_bound3();
  s.name = "upwind_convergence";
  s.regime = Regime::custom;
  s.params.chi = FunctionSpec::constant(2.0);
  s.grid = unit_line(32);
  s.stepper.t_end = 0.5;
  s.stepper.record_every = s.stepper.t_end;
  s.stepper.dt_max = 0.004;
  return s;
}

}  // namespace

std::vector<Scenario> presets() {
  return {theorem_bound3(), theorem_bound5(), mu_zero_conservation(),
          byrne_baseline(), pure_diffusion(), upwind_convergence()};
}

Scenario preset(const std::string& name) {
  for (Scenario& s : presets())
    if (s.name == name) return s;
  throw ValidationError("unknown preset '" + name + "'");
}

}  // namespace invasion
