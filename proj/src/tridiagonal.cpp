#include "cdstab/tridiagonal.hpp"

#include <cmath>

namespace cdstab {

namespace {
// Below this magnitude a pivot is treated as zero; keeps 1/pivot finite.
constexpr double kPivotFloor = 1e-300;
}

TridiagonalMatrix TridiagonalMatrix::identity(int n) {
    TridiagonalMatrix A(n);
    for (double& d : A.diag) d = 1.0;
    return A;
}

TridiagonalMatrix TridiagonalMatrix::transposed() const {
    TridiagonalMatrix T = *this;
    std::swap(T.sub, T.super);
    return T;
}

void TridiagonalMatrix::multiply(const std::vector<double>& x, std::vector<double>& y) const {
    const int n = order();
    y.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        double s = diag[i] * x[i];
        if (i > 0) s += sub[i - 1] * x[i - 1];
        if (i + 1 < n) s += super[i] * x[i + 1];
        y[i] = s;
    }
}

std::vector<double> TridiagonalMatrix::multiply(const std::vector<double>& x) const {
    std::vector<double> y;
    multiply(x, y);
    return y;
}

TridiagonalMatrix linear_combination(double a, const TridiagonalMatrix& A,
                                     double b, const TridiagonalMatrix& B) {
    TridiagonalMatrix C(A.order());
    for (std::size_t i = 0; i < C.diag.size(); ++i) C.diag[i] = a * A.diag[i] + b * B.diag[i];
    for (std::size_t i = 0; i < C.sub.size(); ++i) {
        C.sub[i] = a * A.sub[i] + b * B.sub[i];
        C.super[i] = a * A.super[i] + b * B.super[i];
    }
    return C;
}

std::vector<double> thomas_solve(const TridiagonalMatrix& A, std::vector<double> rhs) {
    TridiagonalFactor f(A);
    f.solve_in_place(rhs);
    return rhs;
}

TridiagonalFactor::TridiagonalFactor(const TridiagonalMatrix& A) {
    const int n = A.order();
    lower_.assign(static_cast<std::size_t>(n > 0 ? n - 1 : 0), 0.0);
    pivot_ = A.diag;
    upper_ = A.super;
    for (int i = 0; i < n; ++i) {
        if (std::fabs(pivot_[i]) < kPivotFloor)
            throw SingularMatrixError("zero pivot in tridiagonal elimination at row " +
                                          std::to_string(i),
                                      i);
        if (i + 1 < n) {
            double m = A.sub[i] / pivot_[i];
            lower_[i] = m;
            pivot_[i + 1] = A.diag[i + 1] - m * upper_[i];
        }
    }
}

void TridiagonalFactor::solve_in_place(std::vector<double>& rhs) const {
    const int n = order();
    for (int i = 1; i < n; ++i) rhs[i] -= lower_[i - 1] * rhs[i - 1];
    rhs[n - 1] /= pivot_[n - 1];
    for (int i = n - 2; i >= 0; --i)
        rhs[i] = (rhs[i] - upper_[i] * rhs[i + 1]) / pivot_[i];
}

std::vector<double> TridiagonalFactor::solve(std::vector<double> rhs) const {
    solve_in_place(rhs);
    return rhs;
}

}  // namespace cdstab
