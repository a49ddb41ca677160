#pragma once

#include <cstddef>

#include "invasion/field.hpp"
#include "invasion/function_spec.hpp"

namespace invasion {

/// Face value of u in the haptotactic flux.
enum class FluxMode {
  upwind,   ///< donor cell; keeps u >= 0 under the CFL bound
  centered  ///< arithmetic mean; second order, for smooth convergence studies only
};

/// Cell-centred Laplacian with mirror ghost cells: every boundary face
/// carries zero flux, so the volume sum of the result vanishes up to rounding.
ScalarField laplacian_neumann(const ScalarField& f);

/// (f[i+1] - f[i]) / h on interior faces, 0 on boundary faces.
VectorField gradient_faces(const ScalarField& f);

/// Discrete divergence of a face field: sum_d (F_hi - F_lo) / h_d per cell.
ScalarField divergence(const VectorField& flux);

/// Face flux u_face chi(v_face) dv/dx with v_face the arithmetic mean of the
/// two neighbours; zero on the boundary.
VectorField haptotaxis_flux(const ScalarField& u, const ScalarField& v, const FunctionSpec& chi,
                            FluxMode mode = FluxMode::upwind);

/// div(u chi(v) grad v), conservative.
ScalarField haptotaxis_divergence(const ScalarField& u, const ScalarField& v,
                                  const FunctionSpec& chi, FluxMode mode = FluxMode::upwind);

/// y = (b I - a Lap) x with the Neumann Laplacian.
ScalarField helmholtz_apply(double a, double b, const ScalarField& x);

struct SolveOptions {
  double rel_tol = 1e-10;
  /// 0 selects 10 * cell count.
  std::size_t max_iter = 0;
};

struct SolveStats {
  std::size_t iterations = 0;
  double rel_residual = 0.0;
};

/// Solves (b I - a Lap) x = rhs for a, b > 0. One-dimensional grids use the
/// Thomas algorithm; two and three dimensions use Jacobi-preconditioned
/// conjugate gradients without assembling the matrix.
/// Throws SolverError if CG misses the residual target within max_iter.
ScalarField helmholtz_solve(double a, double b, const ScalarField& rhs,
                            const SolveOptions& opts = {}, SolveStats* stats = nullptr);

}  // namespace invasion
