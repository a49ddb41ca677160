#pragma once

#include <optional>
#include <string>
#include <vector>

#include "invasion/analysis.hpp"
#include "invasion/scenario.hpp"

namespace invasion {

/// Trajectory of one scenario: states and scalar series at every multiple of
/// stepper.record_every (and at t_end), starting with the initial state.
struct RunResult {
  Scenario scenario;
  std::vector<SimState> recorded_states;
  /// Fixed order, see series_labels().
  std::vector<TimeSeries> series;
  double wall_time = 0.0;
  /// Asymptotic cell level: mean of u0 when mu = 0, otherwise 1.
  double u_bar = 1.0;
  /// Smallest value of u, v and m over every step, not just recorded ones.
  double global_min = 0.0;
  std::size_t steps = 0;

  /// Throws ValidationError for an unknown label.
  const TimeSeries& series_named(const std::string& label) const;
};

/// Labels of the recorded series:
///   u_dev_l2     ||u - u_bar||_2        u_dev_linf   ||u - u_bar||_inf
///   v_linf       ||v||_inf              grad_sqrt_v_l2  ||grad v^{1/2}||_2
///   m_dev_l2     ||m - u_bar g(0)/gamma||_2
///   m_l2         ||m||_2                u_min, v_min, m_min
///   u_l1         ||u||_1
///   u_dev_w1inf, v_w1inf, m_dev_w1inf   max of the sup norm of the value
///                and of its face gradient
const std::vector<std::string>& series_labels();

/// Validates the scenario and integrates it to t_end. Step sizes come from
/// stable_dt and are shortened so that every record time is hit exactly.
RunResult run(const Scenario& scenario);

enum class Verdict { pass, fail, not_applicable };
std::string to_string(Verdict v);

struct Claim {
  std::string id;
  std::string description;
  Verdict verdict = Verdict::not_applicable;
  std::optional<DecayFit> fitted;
  double threshold = 0.0;
  double measured = 0.0;
};

struct TheoremReport {
  std::string regime;
  std::vector<Claim> claims;

  /// Throws ValidationError for an unknown id.
  const Claim& at(const std::string& id) const;
  /// True when no claim failed.
  bool all_passed() const;
};

/// Turns the recorded series and monitors of a run into claims for its
/// regime. Claims needing recorded states are not_applicable when the
/// result carries none.
TheoremReport verify(const RunResult& result);

struct ConvergenceRow {
  double h = 0.0;
  double dt = 0.0;
  /// Volume-weighted L2 distance of (u, v, m) at t_end from the finest run
  /// restricted by cell averaging.
  double error = 0.0;
  /// log2 of the previous row's error over this one; NaN on the first row.
  double observed_order = 0.0;
};

/// Runs the scenario at `levels` successively halved spacings (dt_max halved
/// alongside) and compares each of the first levels - 1 against the finest.
/// Throws ValidationError for levels < 3.
std::vector<ConvergenceRow> convergence_study(const Scenario& scenario, int levels);

/// Scenario refined by 2^k in every active dimension with dt_max / 2^k.
Scenario refined(const Scenario& scenario, int k);

/// Cell average of `fine` onto `coarse`, whose cells must each cover an
/// integer block of fine cells.
ScalarField restrict_to(const ScalarField& fine, const Grid& coarse);

}  // namespace invasion
