#pragma once

#include <optional>
#include <vector>

#include "cdstab/expr.hpp"

namespace cdstab {

// The continuous initial-boundary value problem
//   u_v + a(z) u_z - b(z) u_zz = 0   on (z_left, z_right) x (0, horizon],
//   u(0, z) = k(z),  u(v, z_left) = h1(v),  u(v, z_right) = h2(v),
// with b > epsilon > 0 on the domain.
struct ProblemSpec {
    expr::Expression a, b;     // convection and diffusion coefficients of z
    expr::Expression k;        // initial datum, function of z
    expr::Expression h1, h2;   // boundary data, functions of v
    double z_left = 0.0, z_right = 1.0;
    double horizon = 1.0;
    double epsilon = 1e-12;    // asserted lower bound on b

    // Optional analytic derivatives of a and b. When all four are present,
    // stencil assembly may use them instead of the central-difference
    // surrogates (the two coincide whenever a is at most quadratic between
    // neighboring nodes, in particular for polynomial test coefficients).
    std::optional<expr::Expression> da, dda, db, ddb;

    bool has_analytic_derivatives() const { return da && dda && db && ddb; }

    // Checks domain ordering, horizon positivity and the initial/boundary
    // compatibility h1(0) = k(z_left), h2(0) = k(z_right) within
    // 1e-12 * (1 + |k|). Throws ValidationError.
    void validate() const;
};

// Uniform space-time grid: z_i = z_left + i*dz (i = 0..n_space),
// v^m = m*dv (m = 0..n_time).
struct GridSpec {
    int n_space = 2;       // N >= 2
    int n_time = 1;        // M >= 1
    double dz = 0.0;
    double dv = 0.0;
    double theta = 1.0;    // 1 = backward Euler, 1/2 = Crank-Nicolson

    static GridSpec make(const ProblemSpec& spec, int n_space, int n_time, double theta);
    // For analyses that never march in time: dv given directly, n_time unused.
    static GridSpec make_with_dv(const ProblemSpec& spec, int n_space, double dv, double theta);

    double z(int i, const ProblemSpec& spec) const { return spec.z_left + i * dz; }
    double time(int m) const { return m * dv; }
};

// Sampled coefficients: a_i, b_i on the closed grid (size N+1) and
// second-order central-difference surrogates of their first and second
// derivatives on interior nodes (size N-1, index 0 = node 1).
struct CoefficientTables {
    std::vector<double> a, b;
    std::vector<double> dz_a, dzz_a, dz_b, dzz_b;

    int n_space() const { return static_cast<int>(a.size()) - 1; }
};

enum class StencilVariant {
    kStandard,       // p_i = (2 + dz*gamma_i) / (24 dv), r_i mirrored
    kGammaOutside,   // p_i = (2 + dz) * gamma_i / (24 dv); kept only so the
                     // difference stays pinned by a regression test
};

// Interior-node scheme weights (index 0 = node 1, size N-1).
// Invariants: q_i = 5/(6 dv); p_i + r_i = 1/(6 dv); l_i + m_i + n_i = 0.
struct StencilCoefficients {
    std::vector<double> gamma, zeta, alpha;
    std::vector<double> p, q, r;   // X bands
    std::vector<double> l, m, n;   // Y bands
    double dz = 0.0, dv = 0.0;
    bool diagonally_dominant = true;  // |q_i| > |p_i| + |r_i| held everywhere

    int n_space() const { return static_cast<int>(q.size()) + 1; }
};

// Evaluates a, b on the grid and forms the difference surrogates. Throws
// ValidationError when b <= epsilon at any node, EvalError on non-finite
// coefficient values.
CoefficientTables sample_coefficients(const ProblemSpec& spec, const GridSpec& grid);

StencilCoefficients stencil_from_samples(const CoefficientTables& tables, const GridSpec& grid,
                                         StencilVariant variant = StencilVariant::kStandard);

}  // namespace cdstab
