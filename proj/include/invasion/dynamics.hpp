#pragma once

#include <cmath>
#include <memory>

#include "invasion/discrete_ops.hpp"
#include "invasion/error.hpp"
#include "invasion/model.hpp"

namespace invasion {

struct StepperConfig {
  double dt_max = 0.01;
  /// Safety factor on the explicit-term guards, in (0, 1].
  double cfl = 0.5;
  double t_end = 1.0;
  /// Sampling period for recorded states and series.
  double record_every = 0.1;
  FluxMode flux = FluxMode::upwind;

  bool operator==(const StepperConfig&) const = default;
};

/// Throws ValidationError unless 0 < cfl <= 1 and dt_max, t_end,
/// record_every are positive.
void validate_stepper(const StepperConfig& cfg);

/// Raised when a step produces NaN or Inf. Carries the last good state.
class StepFailure : public NumericalError {
 public:
  StepFailure(const std::string& what, SimState last_good)
      : NumericalError(what), last_good_(std::make_shared<const SimState>(std::move(last_good))) {}
  const SimState& last_good() const { return *last_good_; }

 private:
  std::shared_ptr<const SimState> last_good_;
};

/// v * exp(-m dt) per cell, with m frozen over the step.
ScalarField step_v_exact(const ScalarField& v, const ScalarField& m, double dt);

/// One first-order IMEX step of either formulation.
///
/// Order within the step: (1) m by an implicit diffusion/decay solve with
/// production from the old u, v; (2) v by the exact exponential update;
/// (3) u (or w) by an implicit diffusion solve with explicit haptotaxis,
/// logistic and coupling terms from the old fields. The exponent of the
/// v update integrates m over the step with the quadratic through the
/// previous, current and new m (trapezoid on the first step), so it is
/// exact whenever m is constant in time.
SimState imex_step(const SimState& state, const ModelParams& params, double dt,
                   FluxMode mode = FluxMode::upwind);

/// Individual explicit-term limits before the cfl factor.
struct DtCandidates {
  double advective = INFINITY;
  double logistic = INFINITY;
  double reaction = INFINITY;
};

DtCandidates dt_candidates(const SimState& state, const ModelParams& params);

/// min(dt_max, cfl * min(advective, logistic, reaction)).
double stable_dt(const SimState& state, const ModelParams& params, const StepperConfig& cfg);

/// Cell density of a state regardless of formulation.
ScalarField cell_density(const SimState& state, const ModelParams& params);

/// w = u z; only the first field and the tag change.
SimState to_w_form(const SimState& state, const ModelParams& params);
/// u = w / z.
SimState from_w_form(const SimState& state, const ModelParams& params);
/// Converts to `target` if needed.
SimState in_formulation(const SimState& state, const ModelParams& params, Formulation target);

}  // namespace invasion
