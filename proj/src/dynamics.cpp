#include "invasion/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "invasion/text.hpp"

namespace invasion {

namespace {

constexpr double kDenominatorFloor = 1e-14;

// Exponent of the v update: integral of m over [t, t + dt] from the
// quadratic through (t - dt_prev, m_prev), (t, m), (t + dt, m_new). Falls
// back to the trapezoid on the first step or after an abrupt change of step
// size. The integral of a nonnegative m is nonnegative, so the result is
// clamped at zero to keep v nonincreasing.
ScalarField v_exponent(const SimState& s, const ScalarField& m_new, double dt) {
  ScalarField e(s.grid());
  const double h = dt;
  const double h1 = s.dt_prev;
  const bool three_point = h1 > 0.0 && h <= 4.0 * h1 && h1 <= 4.0 * h;
  double w_prev = 0.0, w_cur = 0.5 * h, w_new = 0.5 * h;
  if (three_point) {
    w_prev = -h * h * h / (6.0 * h1 * (h1 + h));
    w_cur = h * h / (6.0 * h1) + 0.5 * h;
    w_new = (h * h / 3.0 + 0.5 * h1 * h) / (h + h1);
  }
  for (std::size_t i = 0; i < e.size(); ++i) {
    const double x = w_prev * s.m_prev[i] + w_cur * s.m[i] + w_new * m_new[i];
    e[i] = std::max(x, 0.0);
  }
  return e;
}

// sum_d of the face products dv*dw averaged onto cells.
ScalarField face_dot_to_cells(const VectorField& a, const VectorField& b) {
  const Grid& g = a.grid();
  ScalarField out(g);
  for (int d = 0; d < g.dims; ++d) {
    const std::size_t s = g.stride(d);
    const auto& fa = a.component(d);
    const auto& fb = b.component(d);
    for (std::size_t c = 0; c < g.cell_count(); ++c) {
      const std::size_t lo = g.left_face(c, d);
      out[c] += 0.5 * (fa[lo] * fb[lo] + fa[lo + s] * fb[lo + s]);
    }
  }
  return out;
}

void check_finite(const ScalarField& f, const char* name, const SimState& last_good) {
  for (std::size_t i = 0; i < f.size(); ++i)
    if (!std::isfinite(f[i]))
      throw StepFailure(std::string("non-finite ") + name + " in cell " + std::to_string(i) +
                            " during the step from t=" + text::g17(last_good.t),
                        last_good);
}

}  // namespace

void validate_stepper(const StepperConfig& cfg) {
  if (!(cfg.dt_max > 0.0)) throw ValidationError("dt_max must be > 0");
  if (!(cfg.cfl > 0.0 && cfg.cfl <= 1.0)) throw ValidationError("cfl must lie in (0, 1]");
  if (!(cfg.t_end > 0.0) || !std::isfinite(cfg.t_end)) throw ValidationError("t_end must be > 0");
  if (!(cfg.record_every > 0.0)) throw ValidationError("record_every must be > 0");
}

ScalarField step_v_exact(const ScalarField& v, const ScalarField& m, double dt) {
  ScalarField out(v.grid());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] * std::exp(-m[i] * dt);
  return out;
}

ScalarField cell_density(const SimState& state, const ModelParams& params) {
  if (state.formulation == Formulation::original_uvm) return state.a;
  ScalarField u = state.a;
  const ScalarField z = z_field(state.v, params.chi);
  for (std::size_t i = 0; i < u.size(); ++i) u[i] /= z[i];
  return u;
}

SimState imex_step(const SimState& state, const ModelParams& params, double dt, FluxMode mode) {
  if (!(dt > 0.0)) throw ValidationError("imex_step needs dt > 0");
  const Grid& g = state.grid();
  const std::size_t n = g.cell_count();
  const ScalarField& v = state.v;
  const ScalarField& m = state.m;
  const ScalarField u = cell_density(state, params);

  // (1) protease: (1 + gamma dt - d dt Lap) m_new = m + dt u g(v), solved
  // for the increment so that rounding scales with the change, not with m.
  const ScalarField lap_m = laplacian_neumann(m);
  ScalarField rhs_m(g);
  for (std::size_t i = 0; i < n; ++i)
    rhs_m[i] = dt * (u[i] * eval_spec(params.g, v[i]) - params.gamma * m[i] + params.d * lap_m[i]);
  ScalarField m_new = m + helmholtz_solve(params.d * dt, 1.0 + params.gamma * dt, rhs_m);
  check_finite(m_new, "m", state);

  // (2) matrix: exact exponential decay
  const ScalarField expo = v_exponent(state, m_new, dt);
  ScalarField v_new(g);
  for (std::size_t i = 0; i < n; ++i) v_new[i] = v[i] * std::exp(-expo[i]);

  // (3) cells: (1 - dt Lap) a_new = a + dt * explicit terms, again in
  // increment form.
  ScalarField rhs_a = dt * laplacian_neumann(state.a);
  if (state.formulation == Formulation::original_uvm) {
    const ScalarField hapt = haptotaxis_divergence(u, v, params.chi, mode);
    for (std::size_t i = 0; i < n; ++i)
      rhs_a[i] += dt * (-hapt[i] + params.mu * u[i] * (1.0 - u[i] - v[i]));
  } else {
    const ScalarField& w = state.a;
    const ScalarField drift = face_dot_to_cells(gradient_faces(v), gradient_faces(w));
    for (std::size_t i = 0; i < n; ++i) {
      const double chi = eval_spec(params.chi, v[i]);
      rhs_a[i] += dt * (chi * drift[i] + params.mu * w[i] * (1.0 - u[i] - v[i]) +
                        chi * w[i] * v[i] * m[i]);
    }
  }
  ScalarField a_new = state.a + helmholtz_solve(dt, 1.0, rhs_a);
  check_finite(a_new, state.formulation == Formulation::original_uvm ? "u" : "w", state);

  SimState next;
  next.t = state.t + dt;
  next.formulation = state.formulation;
  next.accum_int_m = state.accum_int_m;
  for (std::size_t i = 0; i < n; ++i) next.accum_int_m[i] += 0.5 * dt * (m[i] + m_new[i]);
  VectorField grad_sum = gradient_faces(m);
  grad_sum += gradient_faces(m_new);
  grad_sum *= 0.5 * dt;
  next.accum_int_gradm = state.accum_int_gradm;
  next.accum_int_gradm += grad_sum;
  next.m_prev = m;
  next.dt_prev = dt;
  next.a = std::move(a_new);
  next.v = std::move(v_new);
  next.m = std::move(m_new);
  return next;
}

DtCandidates dt_candidates(const SimState& state, const ModelParams& params) {
  const Grid& g = state.grid();
  const ScalarField u = cell_density(state, params);
  const ScalarField& v = state.v;
  DtCandidates c;

  for (int d = 0; d < g.dims; ++d) {
    const std::size_t s = g.stride(d);
    double max_speed = 0.0;
    for (std::size_t i = 0; i < g.cell_count(); ++i) {
      if (g.coord(i, d) + 1 == g.cells[d]) continue;
      const double speed =
          eval_spec(params.chi, 0.5 * (v[i] + v[i + s])) * (v[i + s] - v[i]) / g.spacing[d];
      max_speed = std::max(max_speed, std::abs(speed));
    }
    c.advective = std::min(c.advective, g.spacing[d] / std::max(max_speed, kDenominatorFloor));
  }

  double logistic = 0.0;
  double reaction = 0.0;
  const double lg = params.g.lipschitz_value;
  for (std::size_t i = 0; i < u.size(); ++i) {
    logistic = std::max(logistic, params.mu * (1.0 + std::abs(u[i]) + std::abs(v[i])));
    reaction = std::max(reaction, params.gamma + std::abs(state.m[i]) + std::abs(u[i]) * lg);
  }
  c.logistic = 1.0 / std::max(logistic, kDenominatorFloor);
  c.reaction = 1.0 / std::max(reaction, kDenominatorFloor);
  return c;
}

double stable_dt(const SimState& state, const ModelParams& params, const StepperConfig& cfg) {
  const DtCandidates c = dt_candidates(state, params);
  return std::min(cfg.dt_max, cfg.cfl * std::min({c.advective, c.logistic, c.reaction}));
}

SimState to_w_form(const SimState& state, const ModelParams& params) {
  if (state.formulation != Formulation::original_uvm)
    throw ValidationError("to_w_form expects a state in (u, v, m) form");
  SimState out = state;
  out.a = hadamard(state.a, z_field(state.v, params.chi));
  out.formulation = Formulation::transformed_wvm;
  return out;
}

SimState from_w_form(const SimState& state, const ModelParams& params) {
  if (state.formulation != Formulation::transformed_wvm)
    throw ValidationError("from_w_form expects a state in (w, v, m) form");
  SimState out = state;
  out.a = cell_density(state, params);
  out.formulation = Formulation::original_uvm;
  return out;
}

SimState in_formulation(const SimState& state, const ModelParams& params, Formulation target) {
  if (state.formulation == target) return state;
  return target == Formulation::original_uvm ? from_w_form(state, params)
                                             : to_w_form(state, params);
}

}  // namespace invasion
