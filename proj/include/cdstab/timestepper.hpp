#pragma once

#include <memory>

#include "cdstab/discretization.hpp"
#include "cdstab/tridiagonal.hpp"

namespace cdstab {

// Fully discrete theta-scheme  (X + theta*Y) U^{m+1} = (X - (1-theta)*Y) U^m + F^m.
// X carries (p, q, r), Y carries (l, m, n); both of order N-1. The left-hand
// matrix is factored once here and reused across every step.
struct SchemeMatrices {
    TridiagonalMatrix X, Y, lhs, rhs;
    double theta = 1.0;
    std::shared_ptr<const TridiagonalFactor> lhs_factor;
};

SchemeMatrices assemble_matrices(const StencilCoefficients& st, double theta);

// Boundary forcing F^m for the step from level m to m+1. Only the first and
// last entries are nonzero.
std::vector<double> boundary_vector(const ProblemSpec& spec, const StencilCoefficients& st,
                                    const GridSpec& grid, int m, double theta);

// One implicit step: solves lhs * U' = rhs * U + F.
std::vector<double> advance_step(const SchemeMatrices& sm, const std::vector<double>& U,
                                 const std::vector<double>& F);

// All time levels of a solve; levels[m] holds the interior values U^m
// (length N-1), m = 0..M.
struct SolutionHistory {
    std::vector<std::vector<double>> levels;
    GridSpec grid;

    const std::vector<double>& final_level() const { return levels.back(); }
};

SolutionHistory solve_ibvp(const ProblemSpec& spec, const GridSpec& grid);

}  // namespace cdstab
