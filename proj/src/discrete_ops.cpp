#include "invasion/discrete_ops.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "invasion/error.hpp"

namespace invasion {

namespace {

void require_same_grid(const ScalarField& a, const ScalarField& b) {
  if (!(a.grid() == b.grid())) throw ValidationError("operands live on different grids");
}

double dot(std::span<const double> x, std::span<const double> y) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

ScalarField thomas_solve(double a, double b, const ScalarField& rhs) {
  const Grid& g = rhs.grid();
  const std::size_t n = rhs.size();
  const double off = -a / (g.spacing[0] * g.spacing[0]);
  std::vector<double> c_prime(n);
  ScalarField x(g);
  // Forward sweep; diag_i = b - off * (#neighbours).
  double diag = b - off;
  c_prime[0] = off / diag;
  x[0] = rhs[0] / diag;
  for (std::size_t i = 1; i < n; ++i) {
    diag = b - off * (i + 1 < n ? 2.0 : 1.0);
    const double denom = diag - off * c_prime[i - 1];
    c_prime[i] = off / denom;
    x[i] = (rhs[i] - off * x[i - 1]) / denom;
  }
  for (std::size_t i = n - 1; i-- > 0;) x[i] -= c_prime[i] * x[i + 1];
  return x;
}

ScalarField jacobi_diagonal(double a, double b, const Grid& g) {
  ScalarField diag(g, b);
  for (std::size_t c = 0; c < g.cell_count(); ++c)
    for (int d = 0; d < g.dims; ++d) {
      const int i = g.coord(c, d);
      const int neighbours = (i > 0) + (i + 1 < g.cells[d]);
      diag[c] += a * neighbours / (g.spacing[d] * g.spacing[d]);
    }
  return diag;
}

ScalarField cg_solve(double a, double b, const ScalarField& rhs, const SolveOptions& opts,
                     SolveStats* stats) {
  const Grid& g = rhs.grid();
  const std::size_t n = rhs.size();
  const std::size_t max_iter = opts.max_iter ? opts.max_iter : 10 * n;
  const double rhs_norm = std::sqrt(dot(rhs.values(), rhs.values()));
  ScalarField x(g);
  if (rhs_norm == 0.0) {
    if (stats) *stats = {};
    return x;
  }
  const ScalarField diag = jacobi_diagonal(a, b, g);
  ScalarField r = rhs;
  ScalarField z(g);
  for (std::size_t i = 0; i < n; ++i) z[i] = r[i] / diag[i];
  ScalarField p = z;
  double rz = dot(r.values(), z.values());
  double res = rhs_norm;
  std::size_t it = 0;
  while (res > opts.rel_tol * rhs_norm) {
    if (it == max_iter)
      throw SolverError("helmholtz_solve: CG did not converge in " + std::to_string(max_iter) +
                        " iterations (relative residual " + std::to_string(res / rhs_norm) + ")");
    const ScalarField ap = helmholtz_apply(a, b, p);
    const double alpha = rz / dot(p.values(), ap.values());
    for (std::size_t i = 0; i < n; ++i) {
      x[i] += alpha * p[i];
      r[i] -= alpha * ap[i];
    }
    res = std::sqrt(dot(r.values(), r.values()));
    for (std::size_t i = 0; i < n; ++i) z[i] = r[i] / diag[i];
    const double rz_new = dot(r.values(), z.values());
    const double beta = rz_new / rz;
    rz = rz_new;
    for (std::size_t i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
    ++it;
  }
  if (stats) *stats = {it, res / rhs_norm};
  return x;
}

}  // namespace

VectorField gradient_faces(const ScalarField& f) {
  const Grid& g = f.grid();
  VectorField grad(g);
  for (int d = 0; d < g.dims; ++d) {
    const std::size_t s = g.stride(d);
    const double inv_h = 1.0 / g.spacing[d];
    auto& faces = grad.component(d);
    for (std::size_t c = 0; c < g.cell_count(); ++c) {
      if (g.coord(c, d) + 1 == g.cells[d]) continue;
      faces[g.left_face(c, d) + s] = (f[c + s] - f[c]) * inv_h;
    }
  }
  return grad;
}

ScalarField divergence(const VectorField& flux) {
  const Grid& g = flux.grid();
  ScalarField out(g);
  for (int d = 0; d < g.dims; ++d) {
    const std::size_t s = g.stride(d);
    const double inv_h = 1.0 / g.spacing[d];
    const auto& faces = flux.component(d);
    for (std::size_t c = 0; c < g.cell_count(); ++c) {
      const std::size_t lo = g.left_face(c, d);
      out[c] += (faces[lo + s] - faces[lo]) * inv_h;
    }
  }
  return out;
}

ScalarField laplacian_neumann(const ScalarField& f) { return divergence(gradient_faces(f)); }

VectorField haptotaxis_flux(const ScalarField& u, const ScalarField& v, const FunctionSpec& chi,
                            FluxMode mode) {
  require_same_grid(u, v);
  const Grid& g = u.grid();
  VectorField flux(g);
  for (int d = 0; d < g.dims; ++d) {
    const std::size_t s = g.stride(d);
    const double inv_h = 1.0 / g.spacing[d];
    auto& faces = flux.component(d);
    for (std::size_t c = 0; c < g.cell_count(); ++c) {
      if (g.coord(c, d) + 1 == g.cells[d]) continue;
      const double speed = eval_spec(chi, 0.5 * (v[c] + v[c + s])) * (v[c + s] - v[c]) * inv_h;
      double u_face;
      if (mode == FluxMode::upwind)
        u_face = speed >= 0.0 ? u[c] : u[c + s];
      else
        u_face = 0.5 * (u[c] + u[c + s]);
      faces[g.left_face(c, d) + s] = u_face * speed;
    }
  }
  return flux;
}

ScalarField haptotaxis_divergence(const ScalarField& u, const ScalarField& v,
                                  const FunctionSpec& chi, FluxMode mode) {
  return divergence(haptotaxis_flux(u, v, chi, mode));
}

ScalarField helmholtz_apply(double a, double b, const ScalarField& x) {
  ScalarField y = laplacian_neumann(x);
  for (std::size_t i = 0; i < y.size(); ++i) y[i] = b * x[i] - a * y[i];
  return y;
}

ScalarField helmholtz_solve(double a, double b, const ScalarField& rhs, const SolveOptions& opts,
                            SolveStats* stats) {
  if (!(a > 0.0) || !(b > 0.0)) throw ValidationError("helmholtz_solve needs a > 0 and b > 0");
  if (rhs.grid().dims > 1) return cg_solve(a, b, rhs, opts, stats);

  ScalarField x = thomas_solve(a, b, rhs);
  if (stats) {
    const ScalarField r = rhs - helmholtz_apply(a, b, x);
    const double rn = std::sqrt(dot(rhs.values(), rhs.values()));
    *stats = {1, rn > 0.0 ? std::sqrt(dot(r.values(), r.values())) / rn : 0.0};
  }
  return x;
}

}  // namespace invasion
