#include "cdstab/dense.hpp"

#include <cmath>

namespace cdstab {

DenseMatrix DenseMatrix::identity(int n) {
    DenseMatrix I(n, n);
    for (int i = 0; i < n; ++i) I(i, i) = 1.0;
    return I;
}

DenseMatrix dense_from_tridiagonal(const TridiagonalMatrix& A) {
    const int n = A.order();
    DenseMatrix D(n, n);
    for (int i = 0; i < n; ++i) {
        D(i, i) = A.diag[i];
        if (i > 0) D(i, i - 1) = A.sub[i - 1];
        if (i + 1 < n) D(i, i + 1) = A.super[i];
    }
    return D;
}

TridiagonalMatrix band_from_dense(const DenseMatrix& A) {
    TridiagonalMatrix T(A.rows);
    for (int i = 0; i < A.rows; ++i) {
        T.diag[i] = A(i, i);
        if (i > 0) T.sub[i - 1] = A(i, i - 1);
        if (i + 1 < A.rows) T.super[i] = A(i, i + 1);
    }
    return T;
}

void matvec_serial(const DenseMatrix& A, const std::vector<double>& x, std::vector<double>& y) {
    y.resize(static_cast<std::size_t>(A.rows));
    for (int i = 0; i < A.rows; ++i) {
        const double* row = A.a.data() + static_cast<std::size_t>(i) * A.cols;
        double s = 0.0;
        for (int j = 0; j < A.cols; ++j) s += row[j] * x[j];
        y[i] = s;
    }
}

void matvec(const DenseMatrix& A, const std::vector<double>& x, std::vector<double>& y) {
    y.resize(static_cast<std::size_t>(A.rows));
#pragma omp parallel for schedule(static) if (A.rows >= 128)
    for (int i = 0; i < A.rows; ++i) {
        const double* row = A.a.data() + static_cast<std::size_t>(i) * A.cols;
        double s = 0.0;
        for (int j = 0; j < A.cols; ++j) s += row[j] * x[j];
        y[i] = s;
    }
}

void matvec_transposed_serial(const DenseMatrix& A, const std::vector<double>& x,
                              std::vector<double>& y) {
    y.assign(static_cast<std::size_t>(A.cols), 0.0);
    for (int i = 0; i < A.rows; ++i) {
        const double* row = A.a.data() + static_cast<std::size_t>(i) * A.cols;
        const double xi = x[i];
        for (int j = 0; j < A.cols; ++j) y[j] += row[j] * xi;
    }
}

void matvec_transposed(const DenseMatrix& A, const std::vector<double>& x, std::vector<double>& y) {
    y.resize(static_cast<std::size_t>(A.cols));
    // column-wise so each output element is owned by one iteration
#pragma omp parallel for schedule(static) if (A.cols >= 128)
    for (int j = 0; j < A.cols; ++j) {
        double s = 0.0;
        for (int i = 0; i < A.rows; ++i) s += A.a[static_cast<std::size_t>(i) * A.cols + j] * x[i];
        y[j] = s;
    }
}

DenseMatrix gram_product_serial(const DenseMatrix& A) {
    DenseMatrix G(A.cols, A.cols);
    for (int i = 0; i < A.cols; ++i)
        for (int j = i; j < A.cols; ++j) {
            double s = 0.0;
            for (int k = 0; k < A.rows; ++k)
                s += A.a[static_cast<std::size_t>(k) * A.cols + i] *
                     A.a[static_cast<std::size_t>(k) * A.cols + j];
            G(i, j) = s;
            G(j, i) = s;
        }
    return G;
}

DenseMatrix gram_product(const DenseMatrix& A) {
    DenseMatrix G(A.cols, A.cols);
#pragma omp parallel for schedule(dynamic, 8) if (A.cols >= 64)
    for (int i = 0; i < A.cols; ++i)
        for (int j = i; j < A.cols; ++j) {
            double s = 0.0;
            for (int k = 0; k < A.rows; ++k)
                s += A.a[static_cast<std::size_t>(k) * A.cols + i] *
                     A.a[static_cast<std::size_t>(k) * A.cols + j];
            G(i, j) = s;
            G(j, i) = s;
        }
    return G;
}

DenseMatrix solve_columns_serial(const TridiagonalMatrix& X, const DenseMatrix& B) {
    const int n = B.rows;
    TridiagonalFactor f(X);
    DenseMatrix W(n, B.cols);
    std::vector<double> col(static_cast<std::size_t>(n));
    for (int j = 0; j < B.cols; ++j) {
        for (int i = 0; i < n; ++i) col[i] = B(i, j);
        f.solve_in_place(col);
        for (int i = 0; i < n; ++i) W(i, j) = col[i];
    }
    return W;
}

DenseMatrix solve_columns(const TridiagonalMatrix& X, const DenseMatrix& B) {
    const int n = B.rows;
    TridiagonalFactor f(X);
    DenseMatrix W(n, B.cols);
#pragma omp parallel if (B.cols >= 64)
    {
        std::vector<double> col(static_cast<std::size_t>(n));
#pragma omp for schedule(static)
        for (int j = 0; j < B.cols; ++j) {
            for (int i = 0; i < n; ++i) col[i] = B(i, j);
            f.solve_in_place(col);
            for (int i = 0; i < n; ++i) W(i, j) = col[i];
        }
    }
    return W;
}

LuFactor::LuFactor(DenseMatrix A) : lu_(std::move(A)) {
    if (!lu_.square())
        throw Error("LU factorization requires a square matrix");
    const int n = lu_.rows;
    perm_.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) perm_[i] = i;
    for (int k = 0; k < n; ++k) {
        int piv = k;
        double best = std::fabs(lu_(k, k));
        for (int i = k + 1; i < n; ++i) {
            double v = std::fabs(lu_(i, k));
            if (v > best) { best = v; piv = i; }
        }
        if (best < 1e-300)
            throw SingularMatrixError("singular matrix in LU factorization at column " +
                                          std::to_string(k),
                                      k);
        if (piv != k) {
            for (int j = 0; j < n; ++j) std::swap(lu_(k, j), lu_(piv, j));
            std::swap(perm_[k], perm_[piv]);
        }
        const double pivot = lu_(k, k);
        // independent row updates
#pragma omp parallel for schedule(static) if (n - k > 128)
        for (int i = k + 1; i < n; ++i) {
            double m = lu_(i, k) / pivot;
            lu_(i, k) = m;
            double* ri = lu_.a.data() + static_cast<std::size_t>(i) * n;
            const double* rk = lu_.a.data() + static_cast<std::size_t>(k) * n;
            for (int j = k + 1; j < n; ++j) ri[j] -= m * rk[j];
        }
    }
}

std::vector<double> LuFactor::solve(std::vector<double> rhs) const {
    const int n = order();
    std::vector<double> x(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) x[i] = rhs[perm_[i]];
    for (int i = 1; i < n; ++i) {
        double s = x[i];
        for (int j = 0; j < i; ++j) s -= lu_(i, j) * x[j];
        x[i] = s;
    }
    for (int i = n - 1; i >= 0; --i) {
        double s = x[i];
        for (int j = i + 1; j < n; ++j) s -= lu_(i, j) * x[j];
        x[i] = s / lu_(i, i);
    }
    return x;
}

std::vector<double> LuFactor::solve_transposed(std::vector<double> rhs) const {
    // Solves A^T x = rhs using P A = L U  =>  A^T = U^T L^T P.
    const int n = order();
    std::vector<double>& y = rhs;
    for (int i = 0; i < n; ++i) {       // U^T y = rhs (forward)
        double s = y[i];
        for (int j = 0; j < i; ++j) s -= lu_(j, i) * y[j];
        y[i] = s / lu_(i, i);
    }
    for (int i = n - 2; i >= 0; --i) {  // L^T z = y (backward)
        double s = y[i];
        for (int j = i + 1; j < n; ++j) s -= lu_(j, i) * y[j];
        y[i] = s;
    }
    std::vector<double> x(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) x[perm_[i]] = y[i];   // undo row permutation
    return x;
}

DenseMatrix dense_solve(const DenseMatrix& A, const DenseMatrix& B) {
    if (!A.square() || A.rows != B.rows)
        throw Error("dense_solve: dimension mismatch");
    LuFactor f(A);
    DenseMatrix X(B.rows, B.cols);
    std::vector<double> col(static_cast<std::size_t>(B.rows));
    for (int j = 0; j < B.cols; ++j) {
        for (int i = 0; i < B.rows; ++i) col[i] = B(i, j);
        col = f.solve(std::move(col));
        for (int i = 0; i < B.rows; ++i) X(i, j) = col[i];
    }
    return X;
}

}  // namespace cdstab
