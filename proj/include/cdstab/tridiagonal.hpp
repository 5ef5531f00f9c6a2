#pragma once

#include <vector>

#include "cdstab/errors.hpp"

namespace cdstab {

// Band storage for an n x n tridiagonal matrix: sub/super hold the
// off-diagonals (length n-1), diag the main diagonal (length n).
struct TridiagonalMatrix {
    std::vector<double> sub, diag, super;

    TridiagonalMatrix() = default;
    explicit TridiagonalMatrix(int n)
        : sub(static_cast<std::size_t>(n > 0 ? n - 1 : 0), 0.0),
          diag(static_cast<std::size_t>(n), 0.0),
          super(static_cast<std::size_t>(n > 0 ? n - 1 : 0), 0.0) {}

    int order() const { return static_cast<int>(diag.size()); }

    static TridiagonalMatrix identity(int n);
    TridiagonalMatrix transposed() const;   // swaps sub and super

    // y = A x
    void multiply(const std::vector<double>& x, std::vector<double>& y) const;
    std::vector<double> multiply(const std::vector<double>& x) const;
};

// a*A + b*B entry-wise on the bands.
TridiagonalMatrix linear_combination(double a, const TridiagonalMatrix& A,
                                     double b, const TridiagonalMatrix& B);

// One-shot Thomas elimination. Throws SingularMatrixError when a pivot
// vanishes (no pivoting is performed; intended for diagonally dominant
// systems).
std::vector<double> thomas_solve(const TridiagonalMatrix& A, std::vector<double> rhs);

// LU factorization of a tridiagonal matrix without pivoting, reusable
// across many right-hand sides (O(n) per solve).
class TridiagonalFactor {
public:
    explicit TridiagonalFactor(const TridiagonalMatrix& A);

    void solve_in_place(std::vector<double>& rhs) const;
    std::vector<double> solve(std::vector<double> rhs) const;

    int order() const { return static_cast<int>(pivot_.size()); }

private:
    std::vector<double> lower_;   // multipliers
    std::vector<double> pivot_;   // eliminated diagonal
    std::vector<double> upper_;   // unchanged super-diagonal
};

}  // namespace cdstab
