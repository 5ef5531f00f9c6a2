#pragma once

#include <complex>
#include <vector>

#include "cdstab/errors.hpp"
#include "cdstab/tridiagonal.hpp"

namespace cdstab {

using Complex = std::complex<double>;
using ComplexList = std::vector<Complex>;

// Row-major dense matrix of doubles.
struct DenseMatrix {
    int rows = 0, cols = 0;
    std::vector<double> a;

    DenseMatrix() = default;
    DenseMatrix(int r, int c)
        : rows(r), cols(c), a(static_cast<std::size_t>(r) * static_cast<std::size_t>(c), 0.0) {}

    double& operator()(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
    double operator()(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }

    static DenseMatrix identity(int n);
    bool square() const { return rows == cols; }
};

DenseMatrix dense_from_tridiagonal(const TridiagonalMatrix& A);
TridiagonalMatrix band_from_dense(const DenseMatrix& A);   // extracts the three bands

// --- OpenMP kernels, each with a serial reference kept for testing and
// --- benchmarking.  Parallelization is over independent output rows or
// --- columns, so parallel and serial variants agree bitwise.

// y = A x
void matvec(const DenseMatrix& A, const std::vector<double>& x, std::vector<double>& y);
void matvec_serial(const DenseMatrix& A, const std::vector<double>& x, std::vector<double>& y);

// y = A^T x
void matvec_transposed(const DenseMatrix& A, const std::vector<double>& x, std::vector<double>& y);
void matvec_transposed_serial(const DenseMatrix& A, const std::vector<double>& x,
                              std::vector<double>& y);

// A^T A (symmetric; both triangles filled)
DenseMatrix gram_product(const DenseMatrix& A);
DenseMatrix gram_product_serial(const DenseMatrix& A);

// W = X^{-1} B, one tridiagonal solve per column of B.
DenseMatrix solve_columns(const TridiagonalMatrix& X, const DenseMatrix& B);
DenseMatrix solve_columns_serial(const TridiagonalMatrix& X, const DenseMatrix& B);

// --- Dense LU with partial pivoting.

class LuFactor {
public:
    explicit LuFactor(DenseMatrix A);   // throws SingularMatrixError

    std::vector<double> solve(std::vector<double> rhs) const;
    std::vector<double> solve_transposed(std::vector<double> rhs) const;
    int order() const { return lu_.rows; }

private:
    DenseMatrix lu_;
    std::vector<int> perm_;
};

// Solves A X = B column by column; residual-checked by the caller's tests.
DenseMatrix dense_solve(const DenseMatrix& A, const DenseMatrix& B);

}  // namespace cdstab
