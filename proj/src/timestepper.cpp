#include "cdstab/timestepper.hpp"

#include <cmath>

namespace cdstab {

SchemeMatrices assemble_matrices(const StencilCoefficients& st, double theta) {
    if (theta != 1.0 && theta != 0.5)
        throw ValidationError("theta must be 1 or 0.5");
    const int n = static_cast<int>(st.q.size());
    SchemeMatrices sm;
    sm.theta = theta;
    sm.X = TridiagonalMatrix(n);
    sm.Y = TridiagonalMatrix(n);
    for (int i = 0; i < n; ++i) {
        sm.X.diag[i] = st.q[i];
        sm.Y.diag[i] = st.m[i];
        if (i + 1 < n) {
            sm.X.super[i] = st.r[i];     // r_1 .. r_{N-2}
            sm.X.sub[i] = st.p[i + 1];   // p_2 .. p_{N-1}
            sm.Y.super[i] = st.n[i];
            sm.Y.sub[i] = st.l[i + 1];
        }
    }
    sm.lhs = linear_combination(1.0, sm.X, theta, sm.Y);
    sm.rhs = linear_combination(1.0, sm.X, -(1.0 - theta), sm.Y);
    sm.lhs_factor = std::make_shared<TridiagonalFactor>(sm.lhs);
    return sm;
}

std::vector<double> boundary_vector(const ProblemSpec& spec, const StencilCoefficients& st,
                                    const GridSpec& grid, int m, double theta) {
    const std::size_t n = st.q.size();
    std::vector<double> F(n, 0.0);
    const double vm = grid.time(m);
    const double vp = grid.time(m + 1);
    const double h1m = spec.h1(vm), h1p = spec.h1(vp);
    const double h2m = spec.h2(vm), h2p = spec.h2(vp);
    const double p1 = st.p.front(), l1 = st.l.front();
    const double rN = st.r.back(), nN = st.n.back();
    if (theta == 1.0) {
        F.front() = p1 * h1m - (p1 + l1) * h1p;
        F.back() += rN * h2m - (rN + nN) * h2p;
    } else {
        F.front() = (p1 - 0.5 * l1) * h1m - (p1 + 0.5 * l1) * h1p;
        F.back() += (rN - 0.5 * nN) * h2m - (rN + 0.5 * nN) * h2p;
    }
    return F;
}

std::vector<double> advance_step(const SchemeMatrices& sm, const std::vector<double>& U,
                                 const std::vector<double>& F) {
    std::vector<double> rhs = sm.rhs.multiply(U);
    for (std::size_t i = 0; i < rhs.size(); ++i) rhs[i] += F[i];
    sm.lhs_factor->solve_in_place(rhs);
    return rhs;
}

SolutionHistory solve_ibvp(const ProblemSpec& spec, const GridSpec& grid) {
    spec.validate();
    const int N = grid.n_space, M = grid.n_time;
    CoefficientTables tables = sample_coefficients(spec, grid);
    StencilCoefficients st = stencil_from_samples(tables, grid);
    SchemeMatrices sm = assemble_matrices(st, grid.theta);

    SolutionHistory hist;
    hist.grid = grid;
    hist.levels.reserve(static_cast<std::size_t>(M) + 1);
    std::vector<double> U(static_cast<std::size_t>(N) - 1);
    for (int i = 1; i < N; ++i) {
        U[i - 1] = spec.k(grid.z(i, spec));
        if (!std::isfinite(U[i - 1]))
            throw EvalError("non-finite initial datum at node " + std::to_string(i));
    }
    hist.levels.push_back(U);
    for (int m = 0; m < M; ++m) {
        std::vector<double> F = boundary_vector(spec, st, grid, m, grid.theta);
        try {
            U = advance_step(sm, U, F);
        } catch (const Error& e) {
            throw Error("time step " + std::to_string(m + 1) + " failed: " + e.what());
        }
        for (double x : U)
            if (!std::isfinite(x))
                throw Error("non-finite solution value at time level " + std::to_string(m + 1));
        hist.levels.push_back(U);
    }
    return hist;
}

}  // namespace cdstab
