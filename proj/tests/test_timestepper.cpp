#include <doctest.h>

#include <cmath>

#include "cdstab/demo.hpp"
#include "cdstab/timestepper.hpp"

using namespace cdstab;

namespace {

ProblemSpec constant_coefficient_problem(double c, const char* k, const char* h1,
                                         const char* h2) {
    ProblemSpec spec;
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", c);
    spec.a = expr::Expression::parse(buf);
    spec.b = expr::Expression::parse(buf);
    spec.k = expr::Expression::parse(k);
    spec.h1 = expr::Expression::parse(h1, "v");
    spec.h2 = expr::Expression::parse(h2, "v");
    return spec;
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::fabs(a[i] - b[i]));
    return m;
}

}  // namespace

TEST_CASE("assembled X for the demo problem at N=3") {
    ProblemSpec spec = demo_problem();
    GridSpec grid = GridSpec::make_with_dv(spec, 3, 0.1, 1.0);
    StencilCoefficients st = stencil_from_samples(sample_coefficients(spec, grid), grid);
    SchemeMatrices sm = assemble_matrices(st, 1.0);
    CHECK(sm.X.diag[0] == doctest::Approx(8.3333333333).epsilon(1e-9));
    CHECK(sm.X.super[0] == doctest::Approx(0.3125).epsilon(1e-12));
    CHECK(sm.X.sub[0] == doctest::Approx(1.25).epsilon(1e-12));
    CHECK(sm.X.diag[1] == doctest::Approx(8.3333333333).epsilon(1e-9));
}

TEST_CASE("Crank-Nicolson combines the bands as X + Y/2 and X - Y/2") {
    ProblemSpec spec = demo_problem();
    GridSpec grid = GridSpec::make_with_dv(spec, 5, 0.1, 0.5);
    StencilCoefficients st = stencil_from_samples(sample_coefficients(spec, grid), grid);
    SchemeMatrices sm = assemble_matrices(st, 0.5);
    for (int i = 0; i < sm.X.order(); ++i) {
        CHECK(sm.lhs.diag[i] == doctest::Approx(sm.X.diag[i] + 0.5 * sm.Y.diag[i]).epsilon(1e-14));
        CHECK(sm.rhs.diag[i] == doctest::Approx(sm.X.diag[i] - 0.5 * sm.Y.diag[i]).epsilon(1e-14));
    }
}

TEST_CASE("N=2 collapses to 1x1 matrices") {
    ProblemSpec spec = demo_problem();
    GridSpec grid = GridSpec::make_with_dv(spec, 2, 0.1, 1.0);
    StencilCoefficients st = stencil_from_samples(sample_coefficients(spec, grid), grid);
    SchemeMatrices sm = assemble_matrices(st, 1.0);
    CHECK(sm.X.order() == 1);
    CHECK(sm.X.diag[0] == doctest::Approx(st.q[0]));
    CHECK(sm.Y.diag[0] == doctest::Approx(st.m[0]));
}

TEST_CASE("boundary vector: homogeneous, constant, and steady forcing") {
    ProblemSpec spec = demo_problem();
    spec.k = expr::Expression::parse("0");
    spec.h1 = expr::Expression::parse("0", "v");
    spec.h2 = expr::Expression::parse("0", "v");
    GridSpec grid = GridSpec::make(spec, 3, 10, 1.0);
    StencilCoefficients st = stencil_from_samples(sample_coefficients(spec, grid), grid);
    for (double v : boundary_vector(spec, st, grid, 0, 1.0)) CHECK(v == 0.0);

    spec.k = expr::Expression::parse("1");
    spec.h1 = expr::Expression::parse("1", "v");
    spec.h2 = expr::Expression::parse("1", "v");
    const std::vector<double> Fbe = boundary_vector(spec, st, grid, 2, 1.0);
    CHECK(Fbe.front() == doctest::Approx(-st.l.front()).epsilon(1e-13));
    CHECK(Fbe.back() == doctest::Approx(-st.n.back()).epsilon(1e-13));

    // time-constant boundary forcing is theta-independent
    const std::vector<double> Fcn = boundary_vector(spec, st, grid, 2, 0.5);
    CHECK(Fcn.front() == doctest::Approx(Fbe.front()).epsilon(1e-13));
    CHECK(Fcn.back() == doctest::Approx(Fbe.back()).epsilon(1e-13));
}

TEST_CASE("constants are fixed points of the step") {
    ProblemSpec spec = demo_problem();
    spec.k = expr::Expression::parse("4.25");
    spec.h1 = expr::Expression::parse("4.25", "v");
    spec.h2 = expr::Expression::parse("4.25", "v");
    for (double theta : {1.0, 0.5}) {
        GridSpec grid = GridSpec::make(spec, 9, 25, theta);
        SolutionHistory hist = solve_ibvp(spec, grid);
        for (const auto& level : hist.levels)
            CHECK(max_abs_diff(level, hist.levels.front()) <= 1e-12);
    }
}

TEST_CASE("M=0 history is just the sampled initial datum") {
    ProblemSpec spec = demo_problem();
    GridSpec grid = GridSpec::make(spec, 6, 1, 1.0);
    grid.n_time = 0;
    SolutionHistory hist = solve_ibvp(spec, grid);
    CHECK(hist.levels.size() == 1);
    for (int i = 1; i < 6; ++i)
        CHECK(hist.levels[0][i - 1] == doctest::Approx(grid.z(i, spec) + 1.0));
}

TEST_CASE("exactly-linear-in-z solution leaves only the temporal error") {
    // u(v,z) = (z+1) e^{-v} solves the demo equation: u_v = -u and
    // a u_z - b u_zz = (z+1) e^{-v}; spatial differences are exact on it
    ProblemSpec spec = demo_problem();
    GridSpec grid = GridSpec::make(spec, 8, 1000, 0.5);
    SolutionHistory hist = solve_ibvp(spec, grid);
    double err = 0.0;
    const double eT = std::exp(-1.0);
    for (int i = 1; i < 8; ++i)
        err = std::max(err, std::fabs(hist.final_level()[i - 1] - (grid.z(i, spec) + 1.0) * eT));
    CHECK(err <= 1e-6);
}

TEST_CASE("observed temporal order: first for backward Euler") {
    ProblemSpec spec = demo_problem();
    double prev = 0.0;
    for (int m : {8, 16, 32}) {
        GridSpec grid = GridSpec::make(spec, 32, m, 1.0);
        SolutionHistory hist = solve_ibvp(spec, grid);
        double err = 0.0;
        const double eT = std::exp(-1.0);
        for (int i = 1; i < 32; ++i)
            err = std::max(err,
                           std::fabs(hist.final_level()[i - 1] - (grid.z(i, spec) + 1.0) * eT));
        if (prev != 0.0) {
            const double order = std::log2(prev / err);
            CHECK(order > 0.8);
            CHECK(order < 1.2);
        }
        prev = err;
    }
}

TEST_CASE("observed spatial order: fourth for Crank-Nicolson with dv ~ dz^2") {
    const double k = 1.3, c = 1.0, growth = c * (k * k - k);
    char kbuf[64], h1buf[64], h2buf[64];
    std::snprintf(kbuf, sizeof kbuf, "exp(%.17g*z)", k);
    std::snprintf(h1buf, sizeof h1buf, "exp(%.17g*v)", growth);
    std::snprintf(h2buf, sizeof h2buf, "exp(%.17g+%.17g*v)", k, growth);
    ProblemSpec spec = constant_coefficient_problem(c, kbuf, h1buf, h2buf);
    double prev = 0.0;
    for (int n : {8, 16, 32}) {
        GridSpec grid = GridSpec::make(spec, n, n * n, 0.5);
        SolutionHistory hist = solve_ibvp(spec, grid);
        double err = 0.0;
        for (int i = 1; i < n; ++i)
            err = std::max(err, std::fabs(hist.final_level()[i - 1] -
                                          std::exp(k * grid.z(i, spec) + growth)));
        if (prev != 0.0) {
            const double order = std::log2(prev / err);
            CHECK(order > 3.6);
            CHECK(order < 4.4);
        }
        prev = err;
    }
}

TEST_CASE("solution stays bounded across four decades of the mesh ratio") {
    ProblemSpec spec = demo_problem();
    const int N = 16, steps = 1000;
    for (double theta : {1.0, 0.5}) {
        for (double d : {0.1, 1.0, 10.0, 100.0}) {
            const double dz = 1.0 / N;
            ProblemSpec s = spec;
            s.horizon = d * dz * dz * steps;
            GridSpec grid = GridSpec::make(s, N, steps, theta);
            SolutionHistory hist = solve_ibvp(s, grid);
            double u0 = 0.0;
            for (double v : hist.levels.front()) u0 = std::max(u0, std::fabs(v));
            const double boundary_mag = 2.0;   // max of h1, h2 on [0, horizon]
            for (const auto& level : hist.levels) {
                double um = 0.0;
                for (double v : level) um = std::max(um, std::fabs(v));
                CHECK(um <= u0 + boundary_mag + 1e-8);
            }
        }
    }
}
