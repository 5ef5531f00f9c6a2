#pragma once

#include "cdstab/dense.hpp"

namespace cdstab {

// Thrown when the QR iteration fails to isolate every eigenvalue within the
// iteration budget; carries whatever converged so far.
struct EigenFailure : NonConvergenceError {
    EigenFailure(const std::string& what, ComplexList partial_)
        : NonConvergenceError(what), partial(std::move(partial_)) {}
    ComplexList partial;
};

// All eigenvalues of a real square matrix: balancing (diagonal similarity
// scaling), Householder reduction to Hessenberg form, then Francis
// double-shift QR. Deterministic; no randomized starts.
ComplexList eigenvalues_dense(DenseMatrix A);

// All eigenvalues of a symmetric matrix, ascending: Householder
// tridiagonalization followed by implicit-shift QL. Only the lower triangle
// is read.
std::vector<double> symmetric_eigenvalues(DenseMatrix S);

}  // namespace cdstab
