#include "invasion/analysis.hpp"

#include <algorithm>
#include <cmath>

#include "invasion/error.hpp"
#include "invasion/text.hpp"

namespace invasion {

void TimeSeries::push(double t, double value) {
  if (!samples_.empty() && !(t > samples_.back().t))
    throw ValidationError("time series '" + label_ + "': sample times must increase strictly");
  if (!std::isfinite(t) || !std::isfinite(value))
    throw ValidationError("time series '" + label_ + "': non-finite sample at t=" + text::g17(t));
  samples_.push_back({t, value});
}

double TimeSeries::max_value() const {
  double m = -INFINITY;
  for (const auto& s : samples_) m = std::max(m, s.value);
  return m;
}

double norm(const ScalarField& f, double p) {
  if (!(p >= 1.0)) throw ValidationError("norm exponent must be >= 1");
  if (std::isinf(p)) {
    double m = 0.0;
    for (double x : f.values()) m = std::max(m, std::abs(x));
    return m;
  }
  const double vol = f.grid().cell_volume();
  double s = 0.0;
  if (p == 1.0) {
    for (double x : f.values()) s += std::abs(x);
    return s * vol;
  }
  if (p == 2.0) {
    for (double x : f.values()) s += x * x;
    return std::sqrt(s * vol);
  }
  for (double x : f.values()) s += std::pow(std::abs(x), p);
  return std::pow(s * vol, 1.0 / p);
}

double face_l2(const VectorField& f) {
  double s = 0.0;
  for (int d = 0; d < f.grid().dims; ++d)
    for (double x : f.component(d)) s += x * x;
  return std::sqrt(s * f.grid().cell_volume());
}

const BoundRecord& BoundsReport::at(const std::string& name) const {
  for (const auto& r : records)
    if (r.name == name) return r;
  throw ValidationError("no bound record named '" + name + "'");
}

bool BoundsReport::all_satisfied() const {
  return std::all_of(records.begin(), records.end(), [](const BoundRecord& r) { return r.satisfied; });
}

namespace {

constexpr double kBoundSlack = 1e-8;
constexpr double kPositivityFloor = -1e-12;

BoundRecord upper(std::string name, double bound, double observed) {
  BoundRecord r{std::move(name), BoundKind::upper, bound, observed};
  r.margin = bound - observed;
  r.satisfied = observed <= bound + kBoundSlack * std::abs(bound);
  return r;
}

BoundRecord lower(std::string name, double bound, double observed) {
  BoundRecord r{std::move(name), BoundKind::lower, bound, observed};
  r.margin = observed - bound;
  r.satisfied = observed >= bound - kBoundSlack * std::abs(bound);
  return r;
}

BoundRecord not_applicable(std::string name, BoundKind kind) {
  BoundRecord r{std::move(name), kind};
  r.applicable = false;
  r.satisfied = true;
  return r;
}

}  // namespace

BoundsReport bounds_report(const std::vector<SimState>& history, const ModelParams& params,
                           const SimState& initial, double t0) {
  BoundsReport rep;
  const ScalarField u0 = cell_density(initial, params);
  const ScalarField& v0 = initial.v;
  const double omega = initial.grid().volume();
  const double u0_l1 = norm(u0, 1.0);
  const double v0_inf = norm(v0, INFINITY);
  const double m0_l1 = norm(initial.m, 1.0);
  const double cap = std::max(omega, u0_l1);
  const double production_cap =
      (params.g.lipschitz_value * v0_inf + eval_spec(params.g, 0.0)) * cap / params.gamma;

  double max_u_l1 = 0.0, max_v_inf = 0.0, max_w_l1 = 0.0;
  double min_u = INFINITY, min_all = INFINITY;
  double worst_m_excess = -INFINITY, worst_m = 0.0, worst_m_bound = 0.0;
  for (const SimState& s : history) {
    const ScalarField u = cell_density(s, params);
    const ScalarField w = hadamard(u, z_field(s.v, params.chi));
    max_u_l1 = std::max(max_u_l1, norm(u, 1.0));
    max_v_inf = std::max(max_v_inf, norm(s.v, INFINITY));
    max_w_l1 = std::max(max_w_l1, norm(w, 1.0));
    min_u = std::min(min_u, u.min());
    min_all = std::min({min_all, u.min(), s.v.min(), s.m.min()});
    const double m_l1 = norm(s.m, 1.0);
    const double m_bound = m0_l1 * std::exp(-params.gamma * s.t) + production_cap;
    if (m_l1 - m_bound > worst_m_excess) {
      worst_m_excess = m_l1 - m_bound;
      worst_m = m_l1;
      worst_m_bound = m_bound;
    }
  }

  rep.records.push_back(upper("mass1", cap, max_u_l1));
  rep.records.push_back(upper("mass2", v0_inf, max_v_inf));
  rep.records.push_back(upper("mass3", worst_m_bound, worst_m));
  rep.records.push_back(upper("mass4", cap, max_w_l1));

  const bool u_bound_applies = !history.empty() && v0.min() > 0.0 && u0.min() > 0.0 &&
                               (params.mu == 0.0 || v0.max() < 1.0);
  if (u_bound_applies) {
    // rho <= w0 everywhere, and rho <= (1 - v0) exp(-int_0^v0 chi) when mu > 0;
    // then u >= w >= rho.
    const ScalarField w0 = hadamard(u0, z_field(v0, params.chi));
    double bound = w0.min();
    if (params.mu > 0.0)
      for (std::size_t i = 0; i < v0.size(); ++i)
        bound = std::min(bound, (1.0 - v0[i]) * std::exp(-chi_antiderivative(params.chi, v0[i])));
    rep.records.push_back(lower("u_bound", bound, min_u));
  } else {
    rep.records.push_back(not_applicable("u_bound", BoundKind::lower));
  }

  if (params.g.positive_floor && u_bound_applies) {
    if (t0 < 0.0) t0 = 0.25 * history.back().t;
    const double sigma = sigma_estimate(history, t0);
    BoundRecord r{"m_delta", BoundKind::lower, 0.0, sigma};
    r.margin = sigma;
    r.satisfied = sigma > 0.0;
    rep.records.push_back(r);
  } else {
    rep.records.push_back(not_applicable("m_delta", BoundKind::lower));
  }

  if (history.empty())
    rep.records.push_back(not_applicable("positivity", BoundKind::lower));
  else
    rep.records.push_back(lower("positivity", kPositivityFloor, min_all));
  return rep;
}

DecayFit decay_fit(const TimeSeries& series, double tail_fraction) {
  if (!(tail_fraction > 0.0 && tail_fraction <= 1.0))
    throw ValidationError("tail_fraction must lie in (0, 1]");
  std::vector<Sample> eligible;
  for (const auto& s : series.samples())
    if (s.value > kDecayFloor) eligible.push_back(s);
  const auto take = static_cast<std::size_t>(std::ceil(tail_fraction * eligible.size()));
  if (take < 8)
    throw InsufficientDataError("decay_fit on '" + series.label() + "': " +
                                std::to_string(take) + " eligible samples, need 8");
  const std::size_t first = eligible.size() - take;

  double st = 0.0, sy = 0.0;
  for (std::size_t i = first; i < eligible.size(); ++i) {
    st += eligible[i].t;
    sy += std::log(eligible[i].value);
  }
  const double n = static_cast<double>(take);
  const double tm = st / n, ym = sy / n;
  double stt = 0.0, sty = 0.0, syy = 0.0;
  for (std::size_t i = first; i < eligible.size(); ++i) {
    const double dt = eligible[i].t - tm;
    const double dy = std::log(eligible[i].value) - ym;
    stt += dt * dt;
    sty += dt * dy;
    syy += dy * dy;
  }
  const double slope = sty / stt;
  const double intercept = ym - slope * tm;

  DecayFit fit;
  fit.rate = -slope;
  fit.amplitude = std::exp(intercept);
  if (syy == 0.0) {
    fit.r_squared = 1.0;
  } else {
    const double ss_res = std::max(syy - slope * sty, 0.0);
    fit.r_squared = std::clamp(1.0 - ss_res / syy, 0.0, 1.0);
  }
  fit.t_start = eligible[first].t;
  fit.t_end = eligible.back().t;
  fit.samples = take;
  return fit;
}

double steady_residual(const SimState& state, const ModelParams& params, FluxMode mode) {
  const ScalarField u = cell_density(state, params);
  const ScalarField& v = state.v;
  const ScalarField& m = state.m;
  const ScalarField lap_u = laplacian_neumann(u);
  const ScalarField hapt = haptotaxis_divergence(u, v, params.chi, mode);
  const ScalarField lap_m = laplacian_neumann(m);
  double r = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double ru = lap_u[i] - hapt[i] + params.mu * u[i] * (1.0 - u[i] - v[i]);
    const double rv = m[i] * v[i];
    const double rm = params.d * lap_m[i] - params.gamma * m[i] + u[i] * eval_spec(params.g, v[i]);
    r = std::max({r, std::abs(ru), std::abs(rv), std::abs(rm)});
  }
  return r;
}

SteadyClass steady_classify(const SimState& state, const ModelParams& params, double tol) {
  const double res = steady_residual(state, params);
  if (res > tol)
    throw NotSteadyError("steady residual " + text::g17(res) + " exceeds tolerance " + text::g17(tol));
  const ScalarField u = cell_density(state, params);
  SteadyClass out;
  out.residual = res;
  if (norm(u, INFINITY) <= tol) {
    out.kind = SteadyClass::Kind::extinct_cells;
    out.v_profile = state.v;
    return out;
  }
  if (norm(state.v, INFINITY) <= tol) {
    double k = u.mean();
    const double m_level = k * eval_spec(params.g, 0.0) / params.gamma;
    double u_dev = 0.0, m_dev = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
      u_dev = std::max(u_dev, std::abs(u[i] - k));
      m_dev = std::max(m_dev, std::abs(state.m[i] - m_level));
    }
    if (u_dev <= tol && m_dev <= tol) {
      bool admissible = true;
      if (params.mu > 0.0) {
        if (std::abs(k - 1.0) <= tol)
          k = 1.0;
        else if (std::abs(k) <= tol)
          k = 0.0;
        else
          admissible = false;
      }
      if (admissible) {
        out.kind = SteadyClass::Kind::homogeneous;
        out.k = k;
        return out;
      }
    }
  }
  throw AmbiguousStateError("state matches neither (0, v, 0) nor (k, 0, k g(0)/gamma) within " +
                            text::g17(tol));
}

double gradv_identity_gap(const SimState& state, const SimState& initial) {
  const Grid& g = state.grid();
  if (!(initial.grid() == g)) throw ValidationError("initial state lives on a different grid");
  const VectorField grad_v = gradient_faces(state.v);
  const VectorField grad_v0 = gradient_faces(initial.v);
  const ScalarField& acc = state.accum_int_m;
  const ScalarField& v0 = initial.v;
  double gap = 0.0;
  for (int d = 0; d < g.dims; ++d) {
    const std::size_t s = g.stride(d);
    const auto& gv = grad_v.component(d);
    const auto& gv0 = grad_v0.component(d);
    const auto& gm = state.accum_int_gradm.component(d);
    for (std::size_t c = 0; c < g.cell_count(); ++c) {
      if (g.coord(c, d) + 1 == g.cells[d]) continue;
      const std::size_t f = g.left_face(c, d) + s;
      const double e_lo = std::exp(-acc[c]);
      const double e_hi = std::exp(-acc[c + s]);
      const double jump = acc[c + s] - acc[c];
      const double e_log = jump == 0.0 ? e_lo : e_lo * (-std::expm1(-jump)) / jump;
      const double e_mean = 0.5 * (e_lo + e_hi);
      const double v0_mean = 0.5 * (v0[c] + v0[c + s]);
      const double recon = e_mean * gv0[f] - v0_mean * e_log * gm[f];
      gap = std::max(gap, std::abs(gv[f] - recon));
    }
  }
  return gap;
}

TimeSeries equivalence_gap(const std::vector<SimState>& run_uvm,
                           const std::vector<SimState>& run_wvm, const ModelParams& params) {
  if (run_uvm.size() != run_wvm.size())
    throw ScheduleMismatchError("runs have different numbers of records");
  TimeSeries gap("equivalence_gap");
  for (std::size_t k = 0; k < run_uvm.size(); ++k) {
    const SimState& a = run_uvm[k];
    const SimState& b = run_wvm[k];
    if (!(a.grid() == b.grid())) throw ScheduleMismatchError("runs use different grids");
    if (std::abs(a.t - b.t) > 1e-12 * std::max(1.0, std::abs(a.t)))
      throw ScheduleMismatchError("record " + std::to_string(k) + " is at t=" + text::g17(a.t) +
                                  " in one run and t=" + text::g17(b.t) + " in the other");
    const ScalarField ua = cell_density(a, params);
    const ScalarField ub = cell_density(b, params);
    gap.push(a.t, norm(ua - ub, INFINITY));
  }
  return gap;
}

double sigma_estimate(const std::vector<SimState>& history, double t0) {
  double sigma = INFINITY;
  for (const SimState& s : history)
    if (s.t >= t0) sigma = std::min(sigma, s.m.min());
  if (std::isinf(sigma))
    throw InsufficientDataError("sigma_estimate: no recorded state with t >= " + text::g17(t0));
  return sigma;
}

}  // namespace invasion
