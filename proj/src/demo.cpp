#include "cdstab/demo.hpp"

#include <algorithm>

#include "cdstab/iterations.hpp"
#include "cdstab/timestepper.hpp"

namespace cdstab {

ProblemSpec demo_problem() {
    ProblemSpec spec;
    spec.a = expr::Expression::parse("z+1");
    spec.b = expr::Expression::parse("(z+1)^2");
    spec.k = expr::Expression::parse("z+1");
    spec.h1 = expr::Expression::parse("exp(-v)", "v");
    spec.h2 = expr::Expression::parse("2*exp(-v)", "v");
    spec.z_left = 0.0;
    spec.z_right = 1.0;
    spec.horizon = 1.0;
    return spec;
}

StencilCoefficients demo_stencil(const ProblemSpec& spec, int n_space, double dv,
                                 StencilVariant variant) {
    GridSpec grid = GridSpec::make_with_dv(spec, n_space, dv, 1.0);
    return stencil_from_samples(sample_coefficients(spec, grid), grid, variant);
}

std::vector<RootTableRow> root_table(const ProblemSpec& spec, int n_lo, int n_hi, double dv) {
    std::vector<RootTableRow> rows(static_cast<std::size_t>(n_hi - n_lo + 1));
#pragma omp parallel for schedule(dynamic)
    for (int n = n_lo; n <= n_hi; ++n) {
        const StencilCoefficients st = demo_stencil(spec, n, dv);
        const ComplexList roots = charpoly_roots(lambda_affine_coeffs(st));
        RootTableRow row;
        row.n_space = n;
        for (const Complex& r : roots) row.roots.push_back(r.real());
        std::sort(row.roots.begin(), row.roots.end(), std::greater<double>());
        rows[static_cast<std::size_t>(n - n_lo)] = std::move(row);
    }
    return rows;
}

std::vector<NormTableRow> norm_table(const ProblemSpec& spec) {
    std::vector<NormTableRow> rows(kNormLadder.size());
    // cells are independent; emission order is fixed by the ladder index
#pragma omp parallel for schedule(dynamic)
    for (std::size_t i = 0; i < kNormLadder.size(); ++i) {
        const auto [n, m] = kNormLadder[i];
        const double dv = spec.horizon / m;
        const StencilCoefficients st = demo_stencil(spec, n, dv);
        SchemeMatrices sm = assemble_matrices(st, 1.0);
        NormTableRow row;
        row.n_space = n;
        row.n_time = m;
        row.norm.xinv_bound = gershgorin_xinv_bound(st);
        row.norm.xinv_exact = 1.0 / min_singular_value(sm.X);
        const YNormBounds yb = y_norm_bounds(st);
        row.norm.y_inf = yb.y_inf;
        row.norm.y_one = yb.y_one;
        row.norm.y2_bound = yb.y2_bound;
        row.norm.y2_exact = spectral_norm(dense_from_tridiagonal(sm.Y));
        rows[i] = std::move(row);
    }
    return rows;
}

std::vector<ConditionTableRow> condition_table(const ProblemSpec& spec, double theta) {
    std::vector<ConditionTableRow> rows(kNormLadder.size());
    for (std::size_t i = 0; i < kNormLadder.size(); ++i) {
        const auto [n, m] = kNormLadder[i];
        const double dv = spec.horizon / m;
        const StencilCoefficients st = demo_stencil(spec, n, dv);
        ConditionTableRow row;
        row.n_space = n;
        row.n_time = m;
        row.report = condition_report(st, theta);
        rows[i] = std::move(row);
    }
    return rows;
}

}  // namespace cdstab
