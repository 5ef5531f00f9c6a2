#include <doctest.h>

#include <cmath>
#include <random>

#include "cdstab/constantcase.hpp"
#include "cdstab/demo.hpp"
#include "cdstab/discretization.hpp"

using namespace cdstab;

namespace {

ProblemSpec spec_with(const char* a, const char* b) {
    ProblemSpec s = demo_problem();
    s.a = expr::Expression::parse(a);
    s.b = expr::Expression::parse(b);
    return s;
}

}  // namespace

TEST_CASE("difference surrogate hits the exact derivative of a quadratic") {
    // b quadratic means the central difference of b is exact: at z_1 = 1/3,
    // dz_b = ((25/9) - 1) / (2/3) = 8/3 = b'(1/3)
    ProblemSpec spec = demo_problem();
    GridSpec grid = GridSpec::make_with_dv(spec, 3, 0.1, 1.0);
    CoefficientTables t = sample_coefficients(spec, grid);
    CHECK(t.dz_b[0] == doctest::Approx(8.0 / 3.0).epsilon(1e-14));
    CHECK(t.dzz_b[0] == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(t.dz_a[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(t.dzz_a[0] == doctest::Approx(0.0));
}

TEST_CASE("constant coefficients produce exactly zero difference arrays") {
    ProblemSpec spec = spec_with("3", "2");
    spec.k = expr::Expression::parse("0");
    spec.h1 = expr::Expression::parse("0", "v");
    spec.h2 = expr::Expression::parse("0", "v");
    GridSpec grid = GridSpec::make_with_dv(spec, 6, 0.1, 1.0);
    CoefficientTables t = sample_coefficients(spec, grid);
    for (double v : t.dz_a) CHECK(v == 0.0);
    for (double v : t.dzz_a) CHECK(v == 0.0);
    for (double v : t.dz_b) CHECK(v == 0.0);
    for (double v : t.dzz_b) CHECK(v == 0.0);
}

TEST_CASE("non-positive diffusion is rejected") {
    ProblemSpec spec = spec_with("1", "-1");
    GridSpec grid = GridSpec::make_with_dv(spec, 4, 0.1, 1.0);
    CHECK_THROWS_AS(sample_coefficients(spec, grid), ValidationError);
}

TEST_CASE("N=2 stencil values, hand-substituted") {
    ProblemSpec spec = demo_problem();
    GridSpec grid = GridSpec::make_with_dv(spec, 2, 0.1, 1.0);
    StencilCoefficients st = stencil_from_samples(sample_coefficients(spec, grid), grid);
    CHECK(st.gamma[0] == doctest::Approx(10.0 / 3.0).epsilon(1e-13));
    CHECK(st.alpha[0] == doctest::Approx(2.25 - 5.0 * 0.25 / 12.0).epsilon(1e-13));
    CHECK(st.m[0] == doctest::Approx(17.1666666667).epsilon(1e-10));
    CHECK(st.q[0] == doctest::Approx(25.0 / 3.0).epsilon(1e-14));
    // m1/q1 is the single amplification-pencil root for N=2
    CHECK(st.m[0] / st.q[0] == doctest::Approx(2.0600).epsilon(1e-4));
}

TEST_CASE("N=3 stencil values, hand-substituted") {
    ProblemSpec spec = demo_problem();
    GridSpec grid = GridSpec::make_with_dv(spec, 3, 0.1, 1.0);
    StencilCoefficients st = stencil_from_samples(sample_coefficients(spec, grid), grid);
    CHECK(st.gamma[0] == doctest::Approx(3.75).epsilon(1e-13));
    CHECK(st.zeta[0] == doctest::Approx(1.2986111).epsilon(1e-7));
    CHECK(st.alpha[0] == doctest::Approx(1.7314815).epsilon(1e-7));
    CHECK(st.gamma[1] == doctest::Approx(3.0).epsilon(1e-13));
    CHECK(st.zeta[1] == doctest::Approx(1.6388889).epsilon(1e-7));
    CHECK(st.alpha[1] == doctest::Approx(2.7314815).epsilon(1e-7));
    CHECK(st.p[1] == doctest::Approx(1.25).epsilon(1e-13));
    CHECK(st.r[0] == doctest::Approx(0.3125).epsilon(1e-13));
}

TEST_CASE("constant pair reduces to the single-coefficient stencil entry-wise") {
    for (double c : {0.5, 1.0, 3.0}) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.17g", c);
        ProblemSpec spec = spec_with(buf, buf);
        spec.k = expr::Expression::parse("0");
        spec.h1 = expr::Expression::parse("0", "v");
        spec.h2 = expr::Expression::parse("0", "v");
        const int N = 7;
        GridSpec grid = GridSpec::make_with_dv(spec, N, 0.05, 1.0);
        StencilCoefficients st = stencil_from_samples(sample_coefficients(spec, grid), grid);

        ConstantProblem cp;
        cp.c = c;
        cp.dz = grid.dz;
        cp.dv = grid.dv;
        cp.n_space = N;
        StencilCoefficients cs = constant_to_stencil(cp);
        for (std::size_t j = 0; j < st.q.size(); ++j) {
            CHECK(st.p[j] == doctest::Approx(cs.p[j]).epsilon(1e-14));
            CHECK(st.q[j] == doctest::Approx(cs.q[j]).epsilon(1e-14));
            CHECK(st.r[j] == doctest::Approx(cs.r[j]).epsilon(1e-14));
            CHECK(st.l[j] == doctest::Approx(cs.l[j]).epsilon(1e-14));
            CHECK(st.m[j] == doctest::Approx(cs.m[j]).epsilon(1e-14));
            CHECK(st.n[j] == doctest::Approx(cs.n[j]).epsilon(1e-14));
            CHECK(st.gamma[j] == doctest::Approx(1.0).epsilon(1e-14));
        }
    }
}

TEST_CASE("row-sum identities hold for random smooth coefficients") {
    std::mt19937 rng(424242);
    std::uniform_real_distribution<double> u(-0.5, 0.5);
    for (int trial = 0; trial < 12; ++trial) {
        char abuf[96], bbuf[96];
        std::snprintf(abuf, sizeof abuf, "%.6f+%.6f*z+%.6f*sin(z)", u(rng), u(rng), u(rng));
        std::snprintf(bbuf, sizeof bbuf, "%.6f+%.6f*z+0.05*cos(3*z)", 1.0 + std::fabs(u(rng)),
                      0.2 * u(rng));
        ProblemSpec spec = spec_with(abuf, bbuf);
        spec.k = expr::Expression::parse("0");
        spec.h1 = expr::Expression::parse("0", "v");
        spec.h2 = expr::Expression::parse("0", "v");
        const int N = 5 + trial;
        GridSpec grid = GridSpec::make_with_dv(spec, N, 0.05, 1.0);
        StencilCoefficients st = stencil_from_samples(sample_coefficients(spec, grid), grid);
        const double q_expected = 5.0 / (6.0 * grid.dv);
        const double pr_expected = 1.0 / (6.0 * grid.dv);
        for (std::size_t j = 0; j < st.q.size(); ++j) {
            CHECK(st.q[j] == doctest::Approx(q_expected).epsilon(1e-13));
            CHECK(st.p[j] + st.r[j] == doctest::Approx(pr_expected).epsilon(1e-13));
            const double scale =
                std::max({std::fabs(st.l[j]), std::fabs(st.m[j]), std::fabs(st.n[j])});
            CHECK(std::fabs(st.l[j] + st.m[j] + st.n[j]) <= 1e-13 * scale);
        }
        CHECK(st.diagonally_dominant);
    }
}

TEST_CASE("analytic-derivative mode coincides with differences for polynomial data") {
    ProblemSpec spec = demo_problem();
    GridSpec grid = GridSpec::make_with_dv(spec, 9, 0.1, 1.0);
    StencilCoefficients central = stencil_from_samples(sample_coefficients(spec, grid), grid);

    spec.da = expr::Expression::parse("1");
    spec.dda = expr::Expression::parse("0");
    spec.db = expr::Expression::parse("2*(z+1)");
    spec.ddb = expr::Expression::parse("2");
    StencilCoefficients analytic = stencil_from_samples(sample_coefficients(spec, grid), grid);
    for (std::size_t j = 0; j < central.q.size(); ++j) {
        CHECK(central.l[j] == doctest::Approx(analytic.l[j]).epsilon(1e-13));
        CHECK(central.m[j] == doctest::Approx(analytic.m[j]).epsilon(1e-13));
        CHECK(central.n[j] == doctest::Approx(analytic.n[j]).epsilon(1e-13));
    }
}

TEST_CASE("incompatible initial/boundary data is rejected") {
    ProblemSpec spec = demo_problem();
    spec.h1 = expr::Expression::parse("5", "v");   // k(0) = 1 but h1(0) = 5
    CHECK_THROWS_AS(spec.validate(), ValidationError);
}

TEST_CASE("legacy gamma-outside weights differ from the standard ones") {
    ProblemSpec spec = demo_problem();
    GridSpec grid = GridSpec::make_with_dv(spec, 3, 0.1, 1.0);
    CoefficientTables t = sample_coefficients(spec, grid);
    StencilCoefficients standard = stencil_from_samples(t, grid, StencilVariant::kStandard);
    StencilCoefficients legacy = stencil_from_samples(t, grid, StencilVariant::kGammaOutside);
    CHECK(legacy.p[1] == doctest::Approx((2.0 + grid.dz) * 3.0 / (24.0 * 0.1)).epsilon(1e-13));
    CHECK(std::fabs(legacy.p[1] - standard.p[1]) > 0.5);
}
