#include "invasion/model.hpp"

#include <cmath>

#include "invasion/error.hpp"

namespace invasion {

void validate_params(const ModelParams& p) {
  if (!(p.d > 0.0) || !std::isfinite(p.d)) throw ValidationError("d must be > 0");
  if (!(p.gamma > 0.0) || !std::isfinite(p.gamma)) throw ValidationError("gamma must be > 0");
  if (!(p.mu >= 0.0) || !std::isfinite(p.mu)) throw ValidationError("mu must be >= 0");
  validate_spec(p.chi);
  validate_spec(p.g);
}

SimState make_state(ScalarField a, ScalarField v, ScalarField m, Formulation formulation,
                    double t) {
  if (!(a.grid() == v.grid()) || !(a.grid() == m.grid()))
    throw ValidationError("state fields must share one grid");
  SimState s;
  s.t = t;
  s.formulation = formulation;
  s.accum_int_m = ScalarField(v.grid());
  s.accum_int_gradm = VectorField(v.grid());
  s.m_prev = m;
  s.a = std::move(a);
  s.v = std::move(v);
  s.m = std::move(m);
  return s;
}

ScalarField z_field(const ScalarField& v, const FunctionSpec& chi) {
  ScalarField z(v.grid());
  for (std::size_t i = 0; i < v.size(); ++i) z[i] = std::exp(-chi_antiderivative(chi, v[i]));
  return z;
}

}  // namespace invasion
