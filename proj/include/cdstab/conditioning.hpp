#pragma once

#include "cdstab/dense.hpp"
#include "cdstab/discretization.hpp"
#include "cdstab/tridiagonal.hpp"

namespace cdstab {

struct YNormBounds {
    double y_inf, y_one, y2_bound;   // y2_bound = sqrt(y_inf * y_one)
};

struct NormReport {
    double xinv_bound = 0.0;   // disc-gap upper bound on ||X^{-1}||_2
    double xinv_exact = 0.0;   // 1 / sigma_min(X)
    double y_inf = 0.0;
    double y_one = 0.0;
    double y2_bound = 0.0;
    double y2_exact = 0.0;     // largest singular value of Y
};

struct ConditionReport {
    NormReport norm;
    double theta = 1.0;
    double kappa_bound = 0.0;  // 1 + xinv_bound * y2_bound (* 1/2 for theta = 1/2)
    double kappa_exact = 0.0;  // 2-norm condition number of I + W (resp. I + W/2)
};

// P = X X^T assembled entry-wise from the bands (pentadiagonal, symmetric).
DenseMatrix gram_matrix(const TridiagonalMatrix& X);

// Certified upper bound on ||X^{-1}||_2 = (min_l (g_l - s_l))^{-1/2}, the
// disc centers/radii of P expressed directly in the stencil weights with
// the matrix-edge convention r_0 = p_1 = r_{N-1} = p_N = 0. Throws when a
// disc gap is non-positive (the bound is then unavailable; the exact value
// still is).
double gershgorin_xinv_bound(const StencilCoefficients& st);

// Row-sum and column-sum norms of Y with the edge convention
// n_0 = l_1 = n_{N-1} = l_N = 0, and their geometric-mean 2-norm bound.
YNormBounds y_norm_bounds(const StencilCoefficients& st);

// The full table row: bound and exact 2-norms plus the condition number of
// the amplification system matrix. For theta = 1/2 the bound halves (W/2)
// and the exact value is computed for I + W/2. Order capped at 1000 for the
// dense part.
ConditionReport condition_report(const StencilCoefficients& st, double theta);

}  // namespace cdstab
