#include "invasion/function_spec.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>

#include "invasion/error.hpp"
#include "invasion/text.hpp"

namespace invasion {

namespace {

void require_finite(double x, const char* what) {
  if (!std::isfinite(x)) throw ValidationError(std::string(what) + " must be finite");
}

std::optional<double> floor_if_positive(double m) {
  if (m > 0.0) return m;
  return std::nullopt;
}

// Index k of the segment [nodes[k], nodes[k+1]] containing v; assumes
// nodes.front() < v < nodes.back().
std::size_t segment_of(const std::vector<double>& nodes, double v) {
  const auto it = std::upper_bound(nodes.begin(), nodes.end(), v);
  return static_cast<std::size_t>(std::distance(nodes.begin(), it)) - 1;
}

double eval_tabulated(const FunctionSpec& s, double v) {
  if (v <= s.nodes.front()) return s.node_values.front();
  if (v >= s.nodes.back()) return s.node_values.back();
  const std::size_t k = segment_of(s.nodes, v);
  const double t = (v - s.nodes[k]) / (s.nodes[k + 1] - s.nodes[k]);
  return s.node_values[k] + t * (s.node_values[k + 1] - s.node_values[k]);
}

}  // namespace

FunctionSpec FunctionSpec::constant(double c) {
  require_finite(c, "constant value");
  if (c < 0.0) throw ValidationError("constant coefficient function must be >= 0");
  FunctionSpec s;
  s.family = Family::constant;
  s.p0 = c;
  s.positive_floor = floor_if_positive(c);
  s.vanishes_at_zero = (c == 0.0);
  return s;
}

FunctionSpec FunctionSpec::affine(double a, double b) {
  require_finite(a, "affine intercept");
  require_finite(b, "affine slope");
  if (a < 0.0 || b < 0.0)
    throw ValidationError("affine coefficient function a + b v needs a >= 0 and b >= 0");
  FunctionSpec s;
  s.family = Family::affine;
  s.p0 = a;
  s.p1 = b;
  s.lipschitz_value = b;
  s.positive_floor = floor_if_positive(a);
  s.vanishes_at_zero = (a == 0.0);
  return s;
}

FunctionSpec FunctionSpec::saturating(double m, double sl) {
  require_finite(m, "saturating base");
  require_finite(sl, "saturating amplitude");
  if (m < 0.0 || m + sl < 0.0)
    throw ValidationError("saturating coefficient function M + s v/(1+v) needs M >= 0 and M + s >= 0");
  FunctionSpec s;
  s.family = Family::saturating;
  s.p0 = m;
  s.p1 = sl;
  s.lipschitz_value = std::abs(sl);
  s.lipschitz_derivative = 2.0 * std::abs(sl);
  s.positive_floor = floor_if_positive(std::min(m, m + sl));
  s.vanishes_at_zero = (m == 0.0);
  return s;
}

FunctionSpec FunctionSpec::tabulated(std::vector<double> nodes, std::vector<double> values) {
  if (nodes.size() < 2 || nodes.size() != values.size())
    throw ValidationError("tabulated coefficient function needs >= 2 nodes and one value per node");
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    require_finite(nodes[k], "tabulated node");
    require_finite(values[k], "tabulated value");
    if (values[k] < 0.0) throw ValidationError("tabulated values must be >= 0");
    if (k > 0 && !(nodes[k] > nodes[k - 1]))
      throw ValidationError("tabulated nodes must be strictly increasing");
  }
  FunctionSpec s;
  s.family = Family::tabulated;
  s.nodes = std::move(nodes);
  s.node_values = std::move(values);

  double lip = 0.0;
  double min_gap = INFINITY;
  std::vector<double> slopes;
  for (std::size_t k = 0; k + 1 < s.nodes.size(); ++k) {
    const double gap = s.nodes[k + 1] - s.nodes[k];
    slopes.push_back((s.node_values[k + 1] - s.node_values[k]) / gap);
    lip = std::max(lip, std::abs(slopes.back()));
    min_gap = std::min(min_gap, gap);
  }
  // Piecewise-linear data has no continuous derivative; report the largest
  // slope jump (including the kinks into the flat extrapolation) over the
  // shortest segment as a discrete stand-in.
  double jump = std::max(std::abs(slopes.front()), std::abs(slopes.back()));
  for (std::size_t k = 1; k < slopes.size(); ++k)
    jump = std::max(jump, std::abs(slopes[k] - slopes[k - 1]));
  s.lipschitz_value = lip;
  s.lipschitz_derivative = jump / min_gap;
  s.positive_floor =
      floor_if_positive(*std::min_element(s.node_values.begin(), s.node_values.end()));
  s.vanishes_at_zero = (eval_tabulated(s, 0.0) == 0.0);
  return s;
}

double eval_spec(const FunctionSpec& spec, double v) {
  v = std::max(v, 0.0);
  switch (spec.family) {
    case FunctionSpec::Family::constant:
      return spec.p0;
    case FunctionSpec::Family::affine:
      return spec.p0 + spec.p1 * v;
    case FunctionSpec::Family::saturating:
      return spec.p0 + spec.p1 * v / (1.0 + v);
    case FunctionSpec::Family::tabulated:
      return eval_tabulated(spec, v);
  }
  return 0.0;
}

double eval_spec_derivative(const FunctionSpec& spec, double v) {
  v = std::max(v, 0.0);
  switch (spec.family) {
    case FunctionSpec::Family::constant:
      return 0.0;
    case FunctionSpec::Family::affine:
      return spec.p1;
    case FunctionSpec::Family::saturating:
      return spec.p1 / ((1.0 + v) * (1.0 + v));
    case FunctionSpec::Family::tabulated: {
      if (v < spec.nodes.front() || v >= spec.nodes.back()) return 0.0;
      const std::size_t k = segment_of(spec.nodes, v);
      return (spec.node_values[k + 1] - spec.node_values[k]) / (spec.nodes[k + 1] - spec.nodes[k]);
    }
  }
  return 0.0;
}

double chi_antiderivative(const FunctionSpec& spec, double v) {
  v = std::max(v, 0.0);
  switch (spec.family) {
    case FunctionSpec::Family::constant:
      return spec.p0 * v;
    case FunctionSpec::Family::affine:
      return spec.p0 * v + 0.5 * spec.p1 * v * v;
    case FunctionSpec::Family::saturating:
      // int_0^v s/(1+s) ds = v - log(1+v)
      return spec.p0 * v + spec.p1 * (v - std::log1p(v));
    case FunctionSpec::Family::tabulated: {
      // Simpson on every linear piece is exact, so the only error is rounding.
      std::vector<double> pts{0.0};
      for (double x : spec.nodes)
        if (x > 0.0 && x < v) pts.push_back(x);
      pts.push_back(v);
      double sum = 0.0;
      for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
        const double a = pts[k];
        const double b = pts[k + 1];
        sum += (b - a) / 6.0 *
               (eval_tabulated(spec, a) + 4.0 * eval_tabulated(spec, 0.5 * (a + b)) +
                eval_tabulated(spec, b));
      }
      return sum;
    }
  }
  return 0.0;
}

void validate_spec(const FunctionSpec& spec, double v_max, int probes) {
  if (probes < 2 || !(v_max > 0.0)) throw ValidationError("invalid probe lattice");
  for (int k = 0; k < probes; ++k) {
    const double v = v_max * k / (probes - 1);
    const double f = eval_spec(spec, v);
    if (!std::isfinite(f) || f < 0.0)
      throw ValidationError("coefficient function " + format_spec(spec) +
                            " is negative at v=" + text::g17(v));
    if (spec.positive_floor && f < *spec.positive_floor)
      throw ValidationError("coefficient function " + format_spec(spec) +
                            " drops below its positive floor at v=" + text::g17(v));
  }
  if (spec.vanishes_at_zero && eval_spec(spec, 0.0) != 0.0)
    throw ValidationError("coefficient function " + format_spec(spec) +
                          " is flagged g(0)=0 but does not vanish at 0");
}

std::string format_spec(const FunctionSpec& spec) {
  using text::g17;
  switch (spec.family) {
    case FunctionSpec::Family::constant:
      return "constant(" + g17(spec.p0) + ")";
    case FunctionSpec::Family::affine:
      return "affine(" + g17(spec.p0) + ", " + g17(spec.p1) + ")";
    case FunctionSpec::Family::saturating:
      return "saturating(" + g17(spec.p0) + ", " + g17(spec.p1) + ")";
    case FunctionSpec::Family::tabulated: {
      std::string v = "tabulated(v=";
      for (std::size_t k = 0; k < spec.nodes.size(); ++k) v += (k ? " " : "") + g17(spec.nodes[k]);
      v += ", y=";
      for (std::size_t k = 0; k < spec.node_values.size(); ++k)
        v += (k ? " " : "") + g17(spec.node_values[k]);
      return v + ")";
    }
  }
  return {};
}

}  // namespace invasion
