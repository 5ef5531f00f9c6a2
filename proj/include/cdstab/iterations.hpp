#pragma once

#include "cdstab/dense.hpp"
#include "cdstab/tridiagonal.hpp"

namespace cdstab {

// Largest singular value via power iteration on A^T A. Deterministic
// all-ones start, relative tolerance 1e-12 on successive estimates, budget
// 10000 sweeps. Throws NonConvergenceError on budget exhaustion.
double spectral_norm(const DenseMatrix& A);

// Smallest singular value via inverse power iteration on (A A^T)^{-1} using
// two tridiagonal solves per step. ||A^{-1}||_2 == 1/min_singular_value(A).
// Same start and tolerance as spectral_norm; the budget is 500000 because
// each step is only O(n) and the singular values of the matrices this
// library meets cluster tightly at the bottom for large n.
double min_singular_value(const TridiagonalMatrix& A);

// Extreme singular values of a dense matrix through the symmetric
// eigenvalues of A^T A; returns {sigma_min, sigma_max}. Used for exact
// 2-norm condition numbers where both ends are needed at once.
struct SingularExtremes {
    double min, max;
};
SingularExtremes singular_extremes(const DenseMatrix& A);

}  // namespace cdstab
