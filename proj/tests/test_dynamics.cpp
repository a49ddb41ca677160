#include <cmath>
#include <random>

#include "doctest.h"
#include "invasion/dynamics.hpp"

using namespace invasion;

namespace {

Grid line(int n, double extent = 1.0) {
  const int c[] = {n};
  const double e[] = {extent};
  return build_grid(1, c, e);
}

ModelParams sample_params() {
  ModelParams p;
  p.d = 0.7;
  p.gamma = 1.3;
  p.mu = 1.0;
  p.chi = FunctionSpec::affine(0.5, 0.5);
  p.g = FunctionSpec::affine(0.2, 1.0);
  return p;
}

SimState smooth_state(const Grid& g) {
  ScalarField u(g), v(g), m(g);
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double x = g.center(i, 0);
    u[i] = 1.0 + 0.3 * std::cos(3.0 * x);
    v[i] = 0.5 + 0.2 * std::sin(2.0 * x + 0.3);
    m[i] = 0.2 + 0.1 * x * x;
  }
  return make_state(u, v, m);
}

struct Triple {
  ScalarField u, v, m;
};

// Method-of-lines right-hand side with the library's spatial operators.
Triple rhs(const Triple& s, const ModelParams& p, FluxMode mode) {
  Triple d{laplacian_neumann(s.u), s.v, laplacian_neumann(s.m)};
  const ScalarField hapt = haptotaxis_divergence(s.u, s.v, p.chi, mode);
  for (std::size_t i = 0; i < s.u.size(); ++i) {
    d.u[i] += -hapt[i] + p.mu * s.u[i] * (1.0 - s.u[i] - s.v[i]);
    d.v[i] = -s.m[i] * s.v[i];
    d.m[i] = p.d * d.m[i] - p.gamma * s.m[i] + s.u[i] * eval_spec(p.g, s.v[i]);
  }
  return d;
}

Triple axpy(const Triple& s, double a, const Triple& k) {
  return {s.u + a * k.u, s.v + a * k.v, s.m + a * k.m};
}

Triple rk4(Triple s, const ModelParams& p, double t_end, int steps, FluxMode mode) {
  const double h = t_end / steps;
  for (int n = 0; n < steps; ++n) {
    const Triple k1 = rhs(s, p, mode);
    const Triple k2 = rhs(axpy(s, 0.5 * h, k1), p, mode);
    const Triple k3 = rhs(axpy(s, 0.5 * h, k2), p, mode);
    const Triple k4 = rhs(axpy(s, h, k3), p, mode);
    s = axpy(s, h / 6.0, k1);
    s = axpy(s, h / 3.0, k2);
    s = axpy(s, h / 3.0, k3);
    s = axpy(s, h / 6.0, k4);
  }
  return s;
}

double max_diff(const ScalarField& a, const ScalarField& b) {
  double e = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) e = std::max(e, std::abs(a[i] - b[i]));
  return e;
}

}  // namespace

TEST_CASE("step_v_exact examples") {
  const Grid g = line(6);
  ScalarField v0(g);
  for (std::size_t i = 0; i < v0.size(); ++i) v0[i] = 0.1 + 0.15 * static_cast<double>(i);
  CHECK(step_v_exact(v0, ScalarField(g, 0.0), 0.3) == v0);

  ScalarField v = v0;
  for (int k = 0; k < 300; ++k) v = step_v_exact(v, ScalarField(g, 0.7), 0.01);
  for (std::size_t i = 0; i < v.size(); ++i) CHECK(std::abs(v[i] - v0[i] * std::exp(-2.1)) <= 1e-12);

  ScalarField m(g, 0.5);
  const ScalarField base = step_v_exact(v0, m, 0.2);
  m[3] = 2.0;
  const ScalarField bumped = step_v_exact(v0, m, 0.2);
  for (std::size_t i = 0; i < v0.size(); ++i) CHECK((bumped[i] == base[i]) == (i != 3));
}

TEST_CASE("imex_step keeps the zero state") {
  const Grid g = line(8);
  const SimState z = make_state(ScalarField(g, 0.0), ScalarField(g, 0.0), ScalarField(g, 0.0));
  const SimState next = imex_step(z, sample_params(), 0.01);
  CHECK(next.t == 0.01);
  CHECK(next.a == z.a);
  CHECK(next.v == z.v);
  CHECK(next.m == z.m);
}

TEST_CASE("imex_step keeps the homogeneous steady state") {
  const Grid g = line(16);
  const ModelParams p = sample_params();
  const double m_star = eval_spec(p.g, 0.0) / p.gamma;
  for (Formulation f : {Formulation::original_uvm, Formulation::transformed_wvm}) {
    SimState s = in_formulation(make_state(ScalarField(g, 1.0), ScalarField(g, 0.0), ScalarField(g, m_star)), p, f);
    for (int k = 0; k < 20; ++k) {
      const SimState next = imex_step(s, p, 0.01);
      CHECK(max_diff(cell_density(next, p), ScalarField(g, 1.0)) <= 1e-12);
      CHECK(max_diff(next.m, ScalarField(g, m_star)) <= 1e-12);
      CHECK(next.v.max() == 0.0);
      s = next;
    }
  }
}

TEST_CASE("one small step matches an RK4 oracle") {
  const Grid g = line(8);
  const ModelParams p = sample_params();
  const SimState s = smooth_state(g);
  for (FluxMode mode : {FluxMode::upwind, FluxMode::centered}) {
    const Triple ref = rk4({s.a, s.v, s.m}, p, 1e-6, 100, mode);
    for (Formulation f : {Formulation::original_uvm, Formulation::transformed_wvm}) {
      const SimState next = imex_step(in_formulation(s, p, f), p, 1e-6, mode);
      CHECK(max_diff(cell_density(next, p), ref.u) <= 1e-7);
      CHECK(max_diff(next.v, ref.v) <= 1e-7);
      CHECK(max_diff(next.m, ref.m) <= 1e-7);
    }
  }
}

TEST_CASE("accumulators advance by the trapezoid") {
  const Grid g = line(8);
  const ModelParams p = sample_params();
  const SimState s = smooth_state(g);
  const SimState next = imex_step(s, p, 0.02);
  for (std::size_t i = 0; i < g.cell_count(); ++i)
    CHECK(next.accum_int_m[i] == doctest::Approx(0.01 * (s.m[i] + next.m[i])).epsilon(1e-14));
  const VectorField g0 = gradient_faces(s.m), g1 = gradient_faces(next.m);
  for (std::size_t f = 0; f < g0.component(0).size(); ++f)
    CHECK(next.accum_int_gradm.component(0)[f] ==
          doctest::Approx(0.01 * (g0.component(0)[f] + g1.component(0)[f])).epsilon(1e-13));
  CHECK(next.m_prev == s.m);
  CHECK(next.dt_prev == 0.02);
}

TEST_CASE("v exponent is exact for m constant in time, with varying steps") {
  // chi = 0, mu = 0, u = 1 and g = gamma m* keep m at m* exactly.
  const Grid g = line(10);
  ModelParams p;
  p.gamma = 2.0;
  p.mu = 0.0;
  p.chi = FunctionSpec::constant(0.0);
  p.g = FunctionSpec::constant(2.0 * 0.35);
  ScalarField v0(g);
  for (std::size_t i = 0; i < v0.size(); ++i) v0[i] = 0.2 + 0.05 * static_cast<double>(i);
  SimState s = make_state(ScalarField(g, 1.0), v0, ScalarField(g, 0.35));
  const double steps[] = {0.01, 0.013, 0.007, 0.02, 0.011};
  for (int k = 0; k < 100; ++k) s = imex_step(s, p, steps[k % 5]);
  for (std::size_t i = 0; i < v0.size(); ++i)
    CHECK(std::abs(s.v[i] - v0[i] * std::exp(-0.35 * s.t)) <= 1e-13);
}

TEST_CASE("non-finite results raise StepFailure with the last good state") {
  const Grid g = line(8);
  SimState s = smooth_state(g);
  s.m[2] = INFINITY;
  try {
    imex_step(s, sample_params(), 0.01);
    FAIL("expected StepFailure");
  } catch (const StepFailure& e) {
    CHECK(e.last_good().t == s.t);
    CHECK(std::isinf(e.last_good().m[2]));
  }
}

TEST_CASE("stable_dt candidates") {
  const Grid g = line(10);
  ModelParams p = sample_params();
  p.mu = 0.0;
  StepperConfig cfg;
  cfg.dt_max = 10.0;
  cfg.cfl = 0.5;
  const SimState flat = make_state(ScalarField(g, 0.0), ScalarField(g, 0.3), ScalarField(g, 0.0));
  CHECK(stable_dt(flat, p, cfg) == doctest::Approx(0.5 / p.gamma));
  cfg.dt_max = 0.1;
  CHECK(stable_dt(flat, p, cfg) == 0.1);

  // chi = 1, dv/dx = 2 on every interior face: advective candidate h / 2.
  ModelParams q;
  q.chi = FunctionSpec::constant(1.0);
  q.mu = 0.0;
  ScalarField v(g);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = 2.0 * g.center(i, 0);
  const SimState ramp = make_state(ScalarField(g, 0.0), v, ScalarField(g, 0.0));
  const DtCandidates c = dt_candidates(ramp, q);
  CHECK(c.advective == doctest::Approx(0.05));
  cfg.dt_max = 1.0;
  CHECK(stable_dt(ramp, q, cfg) == doctest::Approx(0.025));

  const Grid fine = line(20);
  ScalarField vf(fine);
  for (std::size_t i = 0; i < vf.size(); ++i) vf[i] = 2.0 * fine.center(i, 0);
  const DtCandidates cf = dt_candidates(make_state(ScalarField(fine, 0.0), vf, ScalarField(fine, 0.0)), q);
  CHECK(cf.advective == doctest::Approx(0.5 * c.advective));
}

TEST_CASE("w-form transforms") {
  const Grid g = line(5);
  ModelParams p = sample_params();
  p.chi = FunctionSpec::constant(0.0);
  const SimState s = make_state(ScalarField(g, 2.0), ScalarField(g, 1.0), ScalarField(g, 0.1));
  CHECK(to_w_form(s, p).a == s.a);

  p.chi = FunctionSpec::constant(0.8);
  const SimState w = to_w_form(s, p);
  CHECK(w.formulation == Formulation::transformed_wvm);
  for (std::size_t i = 0; i < w.a.size(); ++i) CHECK(w.a[i] == doctest::Approx(2.0 * std::exp(-0.8)).epsilon(1e-15));
  const SimState back = from_w_form(w, p);
  CHECK(back.formulation == Formulation::original_uvm);
  CHECK(max_diff(back.a, s.a) <= 1e-14);
  CHECK(back.v == s.v);
  CHECK(back.m == s.m);
  CHECK(in_formulation(s, p, Formulation::original_uvm) == s);
}

TEST_CASE("positivity, v monotonicity and mu = 0 conservation on random data") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> amp(0.0, 1.0), phase(0.0, 6.0);
  for (int trial = 0; trial < 12; ++trial) {
    const Grid g = line(48);
    ModelParams p = sample_params();
    p.mu = trial % 2 == 0 ? 0.0 : 1.0;
    p.chi = FunctionSpec::constant(0.5 + 2.0 * amp(rng));
    ScalarField u(g), v(g), m(g);
    const double a1 = amp(rng), a2 = amp(rng), ph = phase(rng);
    for (std::size_t i = 0; i < u.size(); ++i) {
      const double x = g.center(i, 0);
      u[i] = a1 * std::exp(-40.0 * (x - 0.3) * (x - 0.3));
      v[i] = 0.9 * (0.5 + 0.5 * std::sin(5.0 * x + ph));
      m[i] = a2 * (0.5 + 0.5 * std::cos(7.0 * x));
    }
    SimState s = make_state(u, v, m, trial % 3 == 0 ? Formulation::transformed_wvm : Formulation::original_uvm);
    s = in_formulation(make_state(u, v, m), p, s.formulation);
    StepperConfig cfg;
    cfg.dt_max = 0.02;
    const double mass0 = cell_density(s, p).integral();
    for (int k = 0; k < 200; ++k) {
      const SimState next = imex_step(s, p, stable_dt(s, p, cfg));
      const ScalarField un = cell_density(next, p);
      CHECK(un.min() >= -1e-12);
      CHECK(next.v.min() >= 0.0);
      CHECK(next.m.min() >= -1e-12);
      for (std::size_t i = 0; i < g.cell_count(); ++i) CHECK(next.v[i] <= s.v[i]);
      if (p.mu == 0.0 && next.formulation == Formulation::original_uvm) {
        CHECK(std::abs(un.integral() - mass0) <= 1e-10 * mass0 * static_cast<double>(k + 1));
      }
      s = next;
    }
  }
}

TEST_CASE("validate_stepper") {
  StepperConfig c;
  CHECK_NOTHROW(validate_stepper(c));
  c.cfl = 1.5;
  CHECK_THROWS_AS(validate_stepper(c), ValidationError);
  c.cfl = 0.5;
  c.dt_max = 0.0;
  CHECK_THROWS_AS(validate_stepper(c), ValidationError);
}
