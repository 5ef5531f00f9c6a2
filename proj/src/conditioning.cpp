#include "cdstab/conditioning.hpp"

#include <cmath>

#include "cdstab/iterations.hpp"
#include "cdstab/timestepper.hpp"

namespace cdstab {

DenseMatrix gram_matrix(const TridiagonalMatrix& X) {
    const int n = X.order();
    // band lookups with the edge convention folded in: row l of X is
    // (p_l, q_l, r_l), with p_1 = r_{N-1} = 0
    auto p = [&](int l) { return (l >= 2 && l <= n) ? X.sub[l - 2] : 0.0; };
    auto q = [&](int l) { return (l >= 1 && l <= n) ? X.diag[l - 1] : 0.0; };
    auto r = [&](int l) { return (l >= 1 && l <= n - 1) ? X.super[l - 1] : 0.0; };
    DenseMatrix P(n, n);
    for (int l = 1; l <= n; ++l) {
        P(l - 1, l - 1) = p(l) * p(l) + q(l) * q(l) + r(l) * r(l);
        if (l + 1 <= n) {
            const double v = q(l) * p(l + 1) + r(l) * q(l + 1);
            P(l - 1, l) = v;
            P(l, l - 1) = v;
        }
        if (l + 2 <= n) {
            const double v = r(l) * p(l + 2);
            P(l - 1, l + 1) = v;
            P(l + 1, l - 1) = v;
        }
    }
    return P;
}

double gershgorin_xinv_bound(const StencilCoefficients& st) {
    const int n = static_cast<int>(st.q.size());
    auto p = [&](int l) { return (l >= 2 && l <= n) ? st.p[l - 1] : 0.0; };
    auto q = [&](int l) { return (l >= 1 && l <= n) ? st.q[l - 1] : 0.0; };
    auto r = [&](int l) { return (l >= 1 && l <= n - 1) ? st.r[l - 1] : 0.0; };
    double min_gap = 0.0;
    for (int l = 1; l <= n; ++l) {
        const double center = p(l) * p(l) + q(l) * q(l) + r(l) * r(l);
        const double radius = p(l) * (q(l - 1) + r(l - 2)) + q(l) * (p(l + 1) + r(l - 1)) +
                              r(l) * (p(l + 2) + q(l + 1));
        const double gap = center - radius;
        if (l == 1 || gap < min_gap) min_gap = gap;
    }
    if (!(min_gap > 0.0))
        throw Error("disc gap is not positive (min g_l - s_l = " + std::to_string(min_gap) +
                    "); the 2-norm bound is unavailable at this resolution");
    return 1.0 / std::sqrt(min_gap);
}

YNormBounds y_norm_bounds(const StencilCoefficients& st) {
    const int n = static_cast<int>(st.m.size());
    auto l_ = [&](int i) { return (i >= 2 && i <= n) ? st.l[i - 1] : 0.0; };
    auto m_ = [&](int i) { return (i >= 1 && i <= n) ? st.m[i - 1] : 0.0; };
    auto n_ = [&](int i) { return (i >= 1 && i <= n - 1) ? st.n[i - 1] : 0.0; };
    double y_inf = 0.0, y_one = 0.0;
    for (int i = 1; i <= n; ++i) {
        y_inf = std::max(y_inf, std::fabs(l_(i)) + std::fabs(m_(i)) + std::fabs(n_(i)));
        y_one = std::max(y_one, std::fabs(n_(i - 1)) + std::fabs(m_(i)) + std::fabs(l_(i + 1)));
    }
    return {y_inf, y_one, std::sqrt(y_inf * y_one)};
}

ConditionReport condition_report(const StencilCoefficients& st, double theta) {
    if (theta != 1.0 && theta != 0.5)
        throw ValidationError("theta must be 1 or 0.5");
    const int n = static_cast<int>(st.q.size());
    if (n > 1000)
        throw ValidationError("condition_report dense stage capped at order 1000 (got " +
                              std::to_string(n) + ")");
    SchemeMatrices sm = assemble_matrices(st, 1.0);   // only X and Y are used here

    ConditionReport rep;
    rep.theta = theta;
    rep.norm.xinv_bound = gershgorin_xinv_bound(st);
    rep.norm.xinv_exact = 1.0 / min_singular_value(sm.X);
    const YNormBounds yb = y_norm_bounds(st);
    rep.norm.y_inf = yb.y_inf;
    rep.norm.y_one = yb.y_one;
    rep.norm.y2_bound = yb.y2_bound;
    rep.norm.y2_exact = spectral_norm(dense_from_tridiagonal(sm.Y));

    const double theta_factor = (theta == 0.5) ? 0.5 : 1.0;
    rep.kappa_bound = 1.0 + rep.norm.xinv_bound * rep.norm.y2_bound * theta_factor;

    // exact kappa: W = X^{-1} Y scaled by theta, both singular extremes of
    // I + W from one symmetric eigendecomposition of its Gram matrix
    DenseMatrix W = solve_columns(sm.X, dense_from_tridiagonal(sm.Y));
    if (theta == 0.5)
        for (double& x : W.a) x *= 0.5;
    for (int i = 0; i < W.rows; ++i) W(i, i) += 1.0;
    const SingularExtremes se = singular_extremes(W);
    if (se.min <= 0.0) throw Error("I + W is numerically singular");
    rep.kappa_exact = se.max / se.min;

    // dominance sanity: the certified bounds must indeed dominate
    if (rep.norm.xinv_exact > rep.norm.xinv_bound * (1.0 + 1e-12))
        throw Error("exact ||X^{-1}|| exceeded its certified bound");
    if (rep.norm.y2_exact > rep.norm.y2_bound * (1.0 + 1e-12))
        throw Error("exact ||Y|| exceeded its certified bound");
    if (rep.kappa_exact > rep.kappa_bound * (1.0 + 1e-9))
        throw Error("exact condition number exceeded its certified bound");
    return rep;
}

}  // namespace cdstab
