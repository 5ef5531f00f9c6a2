#include "cdstab/discretization.hpp"

#include <cmath>
#include <string>

namespace cdstab {

void ProblemSpec::validate() const {
    if (!(z_left < z_right))
        throw ValidationError("domain endpoints must satisfy z_left < z_right");
    if (!(horizon > 0.0))
        throw ValidationError("time horizon must be positive");
    if (!(epsilon > 0.0))
        throw ValidationError("diffusion floor epsilon must be positive");
    const double k_left = k(z_left);
    const double k_right = k(z_right);
    const double tol_l = 1e-12 * (1.0 + std::fabs(k_left));
    const double tol_r = 1e-12 * (1.0 + std::fabs(k_right));
    if (std::fabs(h1(0.0) - k_left) > tol_l)
        throw ValidationError("incompatible data: h1(0) = " + std::to_string(h1(0.0)) +
                              " but k(z_left) = " + std::to_string(k_left));
    if (std::fabs(h2(0.0) - k_right) > tol_r)
        throw ValidationError("incompatible data: h2(0) = " + std::to_string(h2(0.0)) +
                              " but k(z_right) = " + std::to_string(k_right));
}

GridSpec GridSpec::make(const ProblemSpec& spec, int n_space, int n_time, double theta) {
    if (n_space < 2) throw ValidationError("n_space must be >= 2");
    if (n_time < 1) throw ValidationError("n_time must be >= 1");
    if (theta != 1.0 && theta != 0.5)
        throw ValidationError("theta must be 1 (backward Euler) or 0.5 (Crank-Nicolson)");
    GridSpec g;
    g.n_space = n_space;
    g.n_time = n_time;
    g.dz = (spec.z_right - spec.z_left) / n_space;
    g.dv = spec.horizon / n_time;
    g.theta = theta;
    return g;
}

GridSpec GridSpec::make_with_dv(const ProblemSpec& spec, int n_space, double dv, double theta) {
    if (n_space < 2) throw ValidationError("n_space must be >= 2");
    if (!(dv > 0.0)) throw ValidationError("dv must be positive");
    if (theta != 1.0 && theta != 0.5)
        throw ValidationError("theta must be 1 (backward Euler) or 0.5 (Crank-Nicolson)");
    GridSpec g;
    g.n_space = n_space;
    g.n_time = 1;
    g.dz = (spec.z_right - spec.z_left) / n_space;
    g.dv = dv;
    g.theta = theta;
    return g;
}

CoefficientTables sample_coefficients(const ProblemSpec& spec, const GridSpec& grid) {
    const int N = grid.n_space;
    if (N < 2) throw ValidationError("n_space must be >= 2");
    CoefficientTables t;
    t.a.resize(static_cast<std::size_t>(N) + 1);
    t.b.resize(static_cast<std::size_t>(N) + 1);
    for (int i = 0; i <= N; ++i) {
        const double z = grid.z(i, spec);
        t.a[i] = spec.a(z);
        t.b[i] = spec.b(z);
        if (!std::isfinite(t.a[i]) || !std::isfinite(t.b[i]))
            throw EvalError("non-finite coefficient at z = " + std::to_string(z));
        if (t.b[i] <= spec.epsilon)
            throw ValidationError("diffusion coefficient b(" + std::to_string(z) + ") = " +
                                  std::to_string(t.b[i]) + " is not above epsilon = " +
                                  std::to_string(spec.epsilon));
    }
    const std::size_t interior = static_cast<std::size_t>(N) - 1;
    t.dz_a.resize(interior);
    t.dzz_a.resize(interior);
    t.dz_b.resize(interior);
    t.dzz_b.resize(interior);
    const double dz = grid.dz;
    if (spec.has_analytic_derivatives()) {
        for (int i = 1; i < N; ++i) {
            const double z = grid.z(i, spec);
            t.dz_a[i - 1] = (*spec.da)(z);
            t.dzz_a[i - 1] = (*spec.dda)(z);
            t.dz_b[i - 1] = (*spec.db)(z);
            t.dzz_b[i - 1] = (*spec.ddb)(z);
        }
    } else {
        // differences at i = 1 and N-1 lean on the boundary nodes; the closed
        // grid always provides them, so no ghost values are needed
        for (int i = 1; i < N; ++i) {
            t.dz_a[i - 1] = (t.a[i + 1] - t.a[i - 1]) / (2.0 * dz);
            t.dzz_a[i - 1] = (t.a[i + 1] - 2.0 * t.a[i] + t.a[i - 1]) / (dz * dz);
            t.dz_b[i - 1] = (t.b[i + 1] - t.b[i - 1]) / (2.0 * dz);
            t.dzz_b[i - 1] = (t.b[i + 1] - 2.0 * t.b[i] + t.b[i - 1]) / (dz * dz);
        }
    }
    for (std::size_t j = 0; j < interior; ++j)
        if (!std::isfinite(t.dz_a[j]) || !std::isfinite(t.dzz_a[j]) ||
            !std::isfinite(t.dz_b[j]) || !std::isfinite(t.dzz_b[j]))
            throw EvalError("non-finite derivative surrogate at interior node " +
                            std::to_string(j + 1));
    return t;
}

StencilCoefficients stencil_from_samples(const CoefficientTables& t, const GridSpec& grid,
                                         StencilVariant variant) {
    const int N = t.n_space();
    const double dz = grid.dz, dv = grid.dv;
    const std::size_t interior = static_cast<std::size_t>(N) - 1;
    StencilCoefficients s;
    s.dz = dz;
    s.dv = dv;
    s.gamma.resize(interior);
    s.zeta.resize(interior);
    s.alpha.resize(interior);
    s.p.resize(interior);
    s.q.resize(interior);
    s.r.resize(interior);
    s.l.resize(interior);
    s.m.resize(interior);
    s.n.resize(interior);
    for (std::size_t j = 0; j < interior; ++j) {
        const double ai = t.a[j + 1], bi = t.b[j + 1];
        const double da = t.dz_a[j], dda = t.dzz_a[j];
        const double db = t.dz_b[j], ddb = t.dzz_b[j];
        const double gamma = ai / bi + 2.0 * db / bi;
        const double zeta = ai - dz * dz / 12.0 * ((ai / bi) * da + (2.0 / bi) * da * db - dda);
        const double alpha =
            bi + dz * dz / 12.0 *
                     ((ai / bi) * db - 2.0 * da + ddb - (2.0 / bi) * db * db + ai * ai / bi);
        s.gamma[j] = gamma;
        s.zeta[j] = zeta;
        s.alpha[j] = alpha;
        if (variant == StencilVariant::kStandard) {
            s.p[j] = (2.0 + dz * gamma) / (24.0 * dv);
            s.r[j] = (2.0 - dz * gamma) / (24.0 * dv);
        } else {
            s.p[j] = (2.0 + dz) * gamma / (24.0 * dv);
            s.r[j] = (2.0 - dz) * gamma / (24.0 * dv);
        }
        s.q[j] = 5.0 / (6.0 * dv);
        s.l[j] = -zeta / (2.0 * dz) - alpha / (dz * dz);
        s.m[j] = 2.0 * alpha / (dz * dz);
        s.n[j] = zeta / (2.0 * dz) - alpha / (dz * dz);
    }
    s.diagonally_dominant = true;
    for (std::size_t j = 0; j < interior; ++j)
        if (!(std::fabs(s.q[j]) > std::fabs(s.p[j]) + std::fabs(s.r[j]))) {
            s.diagonally_dominant = false;
            break;
        }
    return s;
}

}  // namespace cdstab
