#include "invasion/simulation.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "invasion/error.hpp"

namespace invasion {

namespace {

double w1inf(const ScalarField& f) {
  return std::max(norm(f, INFINITY), gradient_faces(f).max_abs());
}

ScalarField shifted(ScalarField f, double c) {
  for (std::size_t i = 0; i < f.size(); ++i) f[i] -= c;
  return f;
}

ScalarField sqrt_clamped(ScalarField f) {
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = std::sqrt(std::max(0.0, f[i]));
  return f;
}

double min3(const ScalarField& u, const SimState& s) {
  return std::min({u.min(), s.v.min(), s.m.min()});
}

// Samples follow series_labels() order.
void record(RunResult& r, const SimState& s) {
  const ModelParams& p = r.scenario.params;
  const ScalarField u = cell_density(s, p);
  const ScalarField u_dev = shifted(u, r.u_bar);
  const ScalarField m_dev = shifted(s.m, r.u_bar * eval_spec(p.g, 0.0) / p.gamma);
  const double values[] = {
      norm(u_dev, 2.0),
      norm(u_dev, INFINITY),
      norm(s.v, INFINITY),
      face_l2(gradient_faces(sqrt_clamped(s.v))),
      norm(m_dev, 2.0),
      norm(s.m, 2.0),
      u.min(),
      s.v.min(),
      s.m.min(),
      norm(u, 1.0),
      w1inf(u_dev),
      w1inf(s.v),
      w1inf(m_dev),
  };
  for (std::size_t k = 0; k < r.series.size(); ++k) r.series[k].push(s.t, values[k]);
  r.recorded_states.push_back(s);
}

}  // namespace

const std::vector<std::string>& series_labels() {
  static const std::vector<std::string> labels = {
      "u_dev_l2", "u_dev_linf", "v_linf", "grad_sqrt_v_l2", "m_dev_l2", "m_l2", "u_min",
      "v_min",    "m_min",      "u_l1",   "u_dev_w1inf",    "v_w1inf",  "m_dev_w1inf"};
  return labels;
}

const TimeSeries& RunResult::series_named(const std::string& label) const {
  for (const TimeSeries& s : series)
    if (s.label() == label) return s;
  throw ValidationError("no series named '" + label + "'");
}

RunResult run(const Scenario& scenario) {
  validate_scenario(scenario);
  const auto start = std::chrono::steady_clock::now();

  RunResult r;
  r.scenario = scenario;
  for (const std::string& label : series_labels()) r.series.emplace_back(label);

  SimState state = initial_state(scenario);
  const ModelParams& p = scenario.params;
  const StepperConfig& cfg = scenario.stepper;
  const ScalarField u0 = cell_density(state, p);
  r.u_bar = p.mu == 0.0 ? u0.mean() : 1.0;
  r.global_min = min3(u0, state);
  record(r, state);

  for (long k = 1; state.t < cfg.t_end; ++k) {
    const double target = std::min(static_cast<double>(k) * cfg.record_every, cfg.t_end);
    while (state.t < target) {
      const double remaining = target - state.t;
      const double dt = stable_dt(state, p, cfg);
      const double n = std::ceil(remaining / dt * (1.0 - 1e-12));
      const bool last = n <= 1.0;
      state = imex_step(state, p, last ? remaining : remaining / n, cfg.flux);
      if (last) state.t = target;
      ++r.steps;
      r.global_min = std::min(r.global_min, min3(cell_density(state, p), state));
    }
    record(r, state);
  }

  r.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::not_applicable: return "not_applicable";
  }
  return "fail";
}

const Claim& TheoremReport::at(const std::string& id) const {
  for (const Claim& c : claims)
    if (c.id == id) return c;
  throw ValidationError("no claim '" + id + "'");
}

bool TheoremReport::all_passed() const {
  return std::none_of(claims.begin(), claims.end(),
                      [](const Claim& c) { return c.verdict == Verdict::fail; });
}

namespace {

Verdict verdict_of(bool ok) { return ok ? Verdict::pass : Verdict::fail; }

Claim unavailable(std::string id, std::string description, double threshold) {
  Claim c;
  c.id = std::move(id);
  c.description = std::move(description) + " (no recorded states)";
  c.threshold = threshold;
  return c;
}

void add_bounds(TheoremReport& rep, const RunResult& r) {
  static const char* const names[] = {"mass1", "mass2", "mass3", "mass4",
                                      "u_bound", "m_delta", "positivity"};
  static const char* const descriptions[] = {
      "||u||_1 <= max(|Omega|, ||u0||_1)",
      "||v||_inf <= ||v0||_inf",
      "||m||_1 <= ||m0||_1 e^{-gamma t} + (L_g ||v0||_inf + g(0)) max(|Omega|, ||u0||_1) / gamma",
      "||w||_1 <= max(|Omega|, ||u0||_1)",
      "min u >= min(min w0, min (1 - v0) exp(-int_0^{v0} chi))",
      "min m > 0 after the transient",
      "min(u, v, m) >= -1e-12"};
  if (r.recorded_states.empty()) {
    for (int k = 0; k < 7; ++k) rep.claims.push_back(unavailable(names[k], descriptions[k], 0.0));
    return;
  }
  const BoundsReport b =
      bounds_report(r.recorded_states, r.scenario.params, r.recorded_states.front());
  for (int k = 0; k < 7; ++k) {
    const BoundRecord& rec = b.at(names[k]);
    Claim c;
    c.id = names[k];
    c.description = descriptions[k];
    c.threshold = rec.theoretical_bound;
    c.measured = rec.observed;
    c.verdict = rec.applicable ? verdict_of(rec.satisfied) : Verdict::not_applicable;
    rep.claims.push_back(c);
  }
}

// Fits the series; a fit that cannot be made counts as a failure.
Claim rate_claim(const RunResult& r, const std::string& id, const std::string& label,
                 const std::string& description, double min_r2) {
  Claim c;
  c.id = id;
  c.description = description;
  c.threshold = 0.0;
  try {
    const DecayFit f = decay_fit(r.series_named(label));
    c.fitted = f;
    c.measured = f.rate;
    c.verdict = verdict_of(f.rate > 0.0 && f.r_squared >= min_r2);
  } catch (const InsufficientDataError&) {
    c.verdict = Verdict::fail;
  }
  return c;
}

void verify_bound3(TheoremReport& rep, const RunResult& r) {
  const ModelParams& p = r.scenario.params;
  add_bounds(rep, r);

  const double predicted = r.u_bar * eval_spec(p.g, 0.0) / p.gamma;
  {
    Claim c;
    c.id = "asymp_v_rate";
    c.description = "||v||_inf decays at rate u_bar g(0) / gamma within 15%, r^2 >= 0.98";
    c.threshold = predicted;
    try {
      const DecayFit f = decay_fit(r.series_named("v_linf"));
      c.fitted = f;
      c.measured = f.rate;
      c.verdict = verdict_of(f.r_squared >= 0.98 && std::abs(f.rate - predicted) <= 0.15 * predicted);
    } catch (const InsufficientDataError&) {
      c.verdict = Verdict::fail;
    }
    rep.claims.push_back(c);
  }
  rep.claims.push_back(rate_claim(r, "asymp_u", "u_dev_l2",
                                  "||u - u_bar||_2 decays exponentially, r^2 >= 0.95", 0.95));
  rep.claims.push_back(rate_claim(r, "asymp_m", "m_dev_l2",
                                  "||m - u_bar g(0) / gamma||_2 decays exponentially, r^2 >= 0.95",
                                  0.95));
  rep.claims.push_back(
      rate_claim(r, "dv_min", "grad_sqrt_v_l2", "||grad v^{1/2}||_2 decays at a positive rate", 0.0));
  rep.claims.push_back(rate_claim(r, "asy_u_w1inf", "u_dev_w1inf",
                                  "u - u_bar decays in the W^{1,inf} surrogate norm", 0.0));
  rep.claims.push_back(
      rate_claim(r, "asy_v_w1inf", "v_w1inf", "v decays in the W^{1,inf} surrogate norm", 0.0));
  rep.claims.push_back(rate_claim(r, "asy_m_w1inf", "m_dev_w1inf",
                                  "m - u_bar g(0) / gamma decays in the W^{1,inf} surrogate norm",
                                  0.0));

  if (r.recorded_states.empty()) {
    rep.claims.push_back(unavailable("sigma", "min m over t >= T/4 is positive", 0.0));
    rep.claims.push_back(unavailable("steady_residual", "final stationary residual", 1e-5));
    rep.claims.push_back(unavailable("steady_class", "final state is homogeneous(1)", 1e-5));
    return;
  }

  const SimState& last = r.recorded_states.back();
  {
    Claim c;
    c.id = "sigma";
    c.description = "min m over t >= T/4 is positive";
    c.measured = sigma_estimate(r.recorded_states, 0.25 * last.t);
    c.verdict = verdict_of(c.measured > 0.0);
    rep.claims.push_back(c);
  }
  {
    Claim c;
    c.id = "steady_residual";
    c.description = "final stationary residual";
    c.threshold = 1e-5;
    c.measured = steady_residual(last, p, r.scenario.stepper.flux);
    c.verdict = verdict_of(c.measured <= c.threshold);
    rep.claims.push_back(c);
  }
  {
    Claim c;
    c.id = "steady_class";
    c.description = "final state is homogeneous(1)";
    c.threshold = 1e-5;
    try {
      const SteadyClass sc = steady_classify(last, p, c.threshold);
      c.measured = sc.residual;
      c.verdict = verdict_of(sc.kind == SteadyClass::Kind::homogeneous && sc.k == r.u_bar);
    } catch (const Error&) {
      c.measured = steady_residual(last, p, r.scenario.stepper.flux);
      c.verdict = Verdict::fail;
    }
    rep.claims.push_back(c);
  }
}

void verify_bound5(TheoremReport& rep, const RunResult& r) {
  add_bounds(rep, r);
  const TimeSeries& m = r.series_named("m_l2");
  const TimeSeries& u = r.series_named("u_dev_l2");
  {
    Claim c;
    c.id = "asymp_m_limit";
    c.description = "final ||m||_2 <= 1e-3 peak ||m||_2";
    c.threshold = 1e-3 * m.max_value();
    c.measured = m.back().value;
    c.verdict = verdict_of(c.measured <= c.threshold);
    rep.claims.push_back(c);
  }
  {
    Claim c;
    c.id = "asymp_u_limit";
    c.description = "final ||u - u_bar||_2 <= 1e-2 initial";
    c.threshold = 1e-2 * u.front().value;
    c.measured = u.back().value;
    c.verdict = verdict_of(c.measured <= c.threshold);
    rep.claims.push_back(c);
  }
  {
    // Largest relative rise of ||m||_2 between consecutive samples after its peak.
    Claim c;
    c.id = "m_monotone";
    c.description = "||m||_2 is nonincreasing after its peak";
    c.threshold = 1e-9;
    const auto& s = m.samples();
    const auto peak = std::max_element(s.begin(), s.end(), [](const Sample& a, const Sample& b) {
      return a.value < b.value;
    });
    double rise = 0.0;
    for (auto it = peak; it + 1 < s.end(); ++it)
      rise = std::max(rise, ((it + 1)->value - it->value) / std::max(it->value, kDecayFloor));
    c.measured = rise;
    c.verdict = verdict_of(rise <= c.threshold);
    rep.claims.push_back(c);
  }
}

void verify_mu_zero(TheoremReport& rep, const RunResult& r) {
  add_bounds(rep, r);
  const TimeSeries& l1 = r.series_named("u_l1");
  {
    Claim c;
    c.id = "mass_drift";
    c.description = "relative drift of ||u||_1 over the run";
    c.threshold = 1e-9;
    const double ref = l1.front().value;
    for (const Sample& s : l1.samples())
      c.measured = std::max(c.measured, std::abs(s.value - ref) / std::max(ref, kDecayFloor));
    c.verdict = verdict_of(c.measured <= c.threshold);
    rep.claims.push_back(c);
  }
  {
    Claim c;
    c.id = "u_bar";
    c.description = "u_bar equals the mean of u0";
    c.threshold = 1e-14;
    const double mean_u0 = l1.front().value / r.scenario.grid.volume();
    c.measured = std::abs(r.u_bar - mean_u0);
    c.verdict = verdict_of(c.measured <= c.threshold * std::max(1.0, std::abs(mean_u0)));
    rep.claims.push_back(c);
  }
}

void verify_finite(TheoremReport& rep, const RunResult& r) {
  add_bounds(rep, r);
  Claim c;
  c.id = "finite";
  c.description = "every recorded series is finite";
  c.threshold = 0.0;
  bool ok = true;
  for (const TimeSeries& s : r.series)
    for (const Sample& x : s.samples()) ok = ok && std::isfinite(x.value);
  c.measured = ok ? 0.0 : 1.0;
  c.verdict = verdict_of(ok);
  rep.claims.push_back(c);
}

}  // namespace

TheoremReport verify(const RunResult& result) {
  TheoremReport rep;
  rep.regime = to_string(result.scenario.regime);
  switch (result.scenario.regime) {
    case Regime::theorem_bound3: verify_bound3(rep, result); break;
    case Regime::theorem_bound5: verify_bound5(rep, result); break;
    case Regime::mu_zero_conservation: verify_mu_zero(rep, result); break;
    case Regime::byrne_baseline:
    case Regime::custom: verify_finite(rep, result); break;
  }
  return rep;
}

Scenario refined(const Scenario& scenario, int k) {
  Scenario s = scenario;
  const int factor = 1 << k;
  for (int d = 0; d < s.grid.dims; ++d) {
    s.grid.cells[d] *= factor;
    s.grid.spacing[d] /= factor;
  }
  s.stepper.dt_max /= factor;
  return s;
}

ScalarField restrict_to(const ScalarField& fine, const Grid& coarse) {
  const Grid& g = fine.grid();
  std::array<int, kMaxDims> ratio{1, 1, 1};
  for (int d = 0; d < kMaxDims; ++d) {
    if (coarse.cells[d] <= 0 || g.cells[d] % coarse.cells[d] != 0)
      throw ValidationError("restriction needs nested grids");
    ratio[d] = g.cells[d] / coarse.cells[d];
  }
  ScalarField out(coarse);
  const double scale = 1.0 / (static_cast<double>(ratio[0]) * ratio[1] * ratio[2]);
  for (std::size_t i = 0; i < fine.size(); ++i) {
    std::size_t c = 0;
    for (int d = 0; d < kMaxDims; ++d)
      c = c * coarse.cells[d] + static_cast<std::size_t>(g.coord(i, d) / ratio[d]);
    out[c] += fine[i] * scale;
  }
  return out;
}

std::vector<ConvergenceRow> convergence_study(const Scenario& scenario, int levels) {
  if (levels < 3) throw ValidationError("convergence_study needs at least 3 levels");
  std::vector<SimState> finals;
  std::vector<Scenario> runs;
  for (int k = 0; k < levels; ++k) {
    runs.push_back(refined(scenario, k));
    Scenario s = runs.back();
    s.stepper.record_every = s.stepper.t_end;
    finals.push_back(run(s).recorded_states.back());
  }

  const SimState& ref = finals.back();
  const ScalarField u_ref = cell_density(ref, runs.back().params);
  std::vector<ConvergenceRow> rows;
  for (int k = 0; k + 1 < levels; ++k) {
    const Grid& g = finals[k].grid();
    const ScalarField du = cell_density(finals[k], runs[k].params) - restrict_to(u_ref, g);
    const ScalarField dv = finals[k].v - restrict_to(ref.v, g);
    const ScalarField dm = finals[k].m - restrict_to(ref.m, g);
    ConvergenceRow row;
    row.h = g.min_spacing();
    row.dt = runs[k].stepper.dt_max;
    row.error = std::sqrt(std::pow(norm(du, 2.0), 2) + std::pow(norm(dv, 2.0), 2) +
                          std::pow(norm(dm, 2.0), 2));
    row.observed_order = rows.empty() ? NAN : std::log2(rows.back().error / row.error);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace invasion
