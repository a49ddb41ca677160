#pragma once

#include "invasion/field.hpp"
#include "invasion/function_spec.hpp"

namespace invasion {

/// Coefficients of the nondimensional cell-invasion system
///   u_t = Lap u - div(u chi(v) grad v) + mu u (1 - u - v)
///   v_t = -m v
///   m_t = d Lap m - gamma m + u g(v)
/// with no-flux boundaries.
struct ModelParams {
  double d = 1.0;
  double gamma = 1.0;
  double mu = 1.0;
  FunctionSpec chi = FunctionSpec::constant(0.0);
  FunctionSpec g = FunctionSpec::constant(0.0);

  bool operator==(const ModelParams&) const = default;
};

/// Throws ValidationError unless d > 0, gamma > 0, mu >= 0 and both
/// coefficient functions pass validate_spec.
void validate_params(const ModelParams& p);

enum class Formulation {
  original_uvm,    ///< first field is the cell density u
  transformed_wvm  ///< first field is w = u z with z = exp(-int_0^v chi)
};

/// One point of a trajectory in either formulation.
///
/// The accumulators hold the running time integrals of m (per cell) and of
/// grad m (per face, same staggering as gradient_faces). `m_prev` and
/// `dt_prev` are the protease field and step size one step back; the
/// v-update uses them for its three-point exponent quadrature.
struct SimState {
  double t = 0.0;
  ScalarField a;
  ScalarField v;
  ScalarField m;
  Formulation formulation = Formulation::original_uvm;
  ScalarField accum_int_m;
  VectorField accum_int_gradm;
  ScalarField m_prev;
  double dt_prev = 0.0;

  const Grid& grid() const { return v.grid(); }
  bool operator==(const SimState&) const = default;
};

/// Fresh state at time t with zeroed accumulators.
SimState make_state(ScalarField a, ScalarField v, ScalarField m,
                    Formulation formulation = Formulation::original_uvm, double t = 0.0);

/// z = exp(-int_0^v chi) per cell; negative v is clamped to 0.
ScalarField z_field(const ScalarField& v, const FunctionSpec& chi);

}  // namespace invasion
