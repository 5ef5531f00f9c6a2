#include "cdstab/constantcase.hpp"

#include <algorithm>
#include <cmath>

namespace cdstab {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

void ConstantProblem::validate() const {
    if (!(c > 0.0))
        throw ValidationError("constant coefficient c must be positive (got " +
                              std::to_string(c) + ")");
    if (!(dz > 0.0) || !(dv > 0.0)) throw ValidationError("dz and dv must be positive");
    if (n_space < 2) throw ValidationError("n_space must be >= 2");
}

double transform_to_c(double a, double b) {
    if (a == 0.0)
        throw ValidationError(
            "transform undefined for a = 0; solve the pure diffusion equation directly");
    if (!(b > 0.0)) throw ValidationError("diffusion coefficient must be positive");
    return a * a / b;
}

ConstantStencil constant_stencil(const ConstantProblem& cp) {
    cp.validate();
    const double c = cp.c, dz = cp.dz, dv = cp.dv, d = cp.d();
    ConstantStencil s;
    s.c1 = (2.0 + dz) / (24.0 * dv);
    s.c2 = 5.0 / (6.0 * dv);
    s.c3 = (2.0 - dz) / (24.0 * dv);
    const double aug = c + c * dz * dz / 12.0;   // alpha of the reduced equation
    s.y1 = -c / (2.0 * dz) - aug / (dz * dz);
    s.y2 = 2.0 * aug / (dz * dz);
    s.y3 = c / (2.0 * dz) - aug / (dz * dz);
    // the d-form of the same three values must agree
    const double y1d = (-c / (2.0 * dv)) * ((2.0 + dz) * d + dv / 6.0);
    const double y2d = (c / dv) * (2.0 * d + dv / 6.0);
    const double y3d = (-c / (2.0 * dv)) * ((2.0 - dz) * d + dv / 6.0);
    auto close = [](double x, double y) {
        return std::fabs(x - y) <= 1e-13 * std::max({1.0, std::fabs(x), std::fabs(y)});
    };
    if (!close(s.y1, y1d) || !close(s.y2, y2d) || !close(s.y3, y3d))
        throw Error("constant stencil: direct and mesh-ratio forms disagree");
    return s;
}

StencilCoefficients constant_to_stencil(const ConstantProblem& cp) {
    const ConstantStencil cs = constant_stencil(cp);
    const std::size_t interior = static_cast<std::size_t>(cp.n_space) - 1;
    StencilCoefficients st;
    st.dz = cp.dz;
    st.dv = cp.dv;
    st.gamma.assign(interior, 1.0);
    st.zeta.assign(interior, cp.c);
    st.alpha.assign(interior, cp.c + cp.c * cp.dz * cp.dz / 12.0);
    st.p.assign(interior, cs.c1);
    st.q.assign(interior, cs.c2);
    st.r.assign(interior, cs.c3);
    st.l.assign(interior, cs.y1);
    st.m.assign(interior, cs.y2);
    st.n.assign(interior, cs.y3);
    st.diagonally_dominant = std::fabs(cs.c2) > std::fabs(cs.c1) + std::fabs(cs.c3);
    return st;
}

double phi_zero_eigenvalue(const ConstantProblem& cp) {
    return (6.0 * cp.c / 5.0) * (2.0 * cp.d() + cp.dv / 6.0);
}

namespace {

// Roots of A x^2 + B x + C with the larger-magnitude root computed first
// and the mate recovered from the product; avoids cancellation when the
// coefficient magnitudes are far apart.
ComplexList stable_quadratic(double A, double B, double C) {
    const double disc = B * B - 4.0 * A * C;
    if (disc >= 0.0) {
        const double s = std::sqrt(disc);
        const double q = -0.5 * (B + (B >= 0.0 ? s : -s));
        double r1, r2;
        if (q != 0.0) {
            r1 = q / A;
            r2 = C / q;
        } else {
            r1 = 0.0;            // B == 0 and disc == 0: double root at 0
            r2 = 0.0;
        }
        return {Complex(r1, 0.0), Complex(r2, 0.0)};
    }
    const double re = -B / (2.0 * A);
    const double im = std::sqrt(-disc) / (2.0 * A);
    return {Complex(re, im), Complex(re, -im)};
}

struct FamilyCoefficients {
    double a2;    // lambda^2 coefficient
    double a1;    // lambda coefficient (signed, as it appears in the quadratic)
    double a0;    // constant term
};

FamilyCoefficients family_coefficients(const ConstantStencil& s, double phi) {
    FamilyCoefficients f;
    f.a2 = s.c2 * s.c2 - 4.0 * s.c1 * s.c3 * phi;
    f.a1 = -(2.0 * s.c2 * s.y2 - 4.0 * s.c1 * s.y3 * phi - 4.0 * s.c3 * s.y1 * phi);
    f.a0 = s.y2 * s.y2 - 4.0 * s.y1 * s.y3 * phi;
    return f;
}

}  // namespace

ComplexList eigen_family(const ConstantProblem& cp, int k) {
    cp.validate();
    if (k < 1 || k > cp.n_space - 1)
        throw ValidationError("eigen_family requires 1 <= k <= N-1");
    if (2 * k == cp.n_space)   // cos(pi/2): the phi = 0 branch, B = 0 exactly
        return {Complex(phi_zero_eigenvalue(cp), 0.0)};
    const double cosk = std::cos(k * kPi / cp.n_space);
    const double phi = cosk * cosk;
    const ConstantStencil s = constant_stencil(cp);
    const FamilyCoefficients f = family_coefficients(s, phi);
    return stable_quadratic(f.a2, f.a1, f.a0);
}

ConstantCertificate stability_certificate(const ConstantProblem& cp) {
    cp.validate();
    if (!(cp.dz < 2.0))
        throw ValidationError("certificate requires dz < 2 (got " + std::to_string(cp.dz) + ")");
    const ConstantStencil s = constant_stencil(cp);
    ConstantCertificate cert;
    cert.certified = true;

    auto check_signs = [&](double phi, int label) {
        const FamilyCoefficients f = family_coefficients(s, phi);
        // positive lambda^2 coefficient, positive negated lambda
        // coefficient, positive constant term: sum and product of moduli of
        // the roots are then positive, so real parts are positive
        if (!(f.a2 > 0.0) || !(-f.a1 > 0.0) || !(f.a0 > 0.0)) {
            cert.certified = false;
            if (cert.offending_k < 0) {
                cert.offending_k = label;
                cert.detail = "sign condition failed at k = " + std::to_string(label) +
                              " (phi = " + std::to_string(phi) + ")";
            }
            return false;
        }
        return true;
    };

    for (int k = 1; k <= cp.n_space - 1; ++k) {
        if (2 * k == cp.n_space) {   // phi = 0 branch
            const double lam = phi_zero_eigenvalue(cp);
            cert.family_roots.push_back(Complex(lam, 0.0));
            if (!(lam > 0.0)) {
                cert.certified = false;
                cert.offending_k = k;
                cert.detail = "phi = 0 eigenvalue is not positive";
            }
            continue;
        }
        const double cosk = std::cos(k * kPi / cp.n_space);
        const double phi = cosk * cosk;
        check_signs(phi, k);
        const ComplexList roots = eigen_family(cp, k);
        cert.family_roots.insert(cert.family_roots.end(), roots.begin(), roots.end());
    }
    // the discriminant-zero branch: same quadratic at phi = 1; its solutions
    // are not eigenvalues unless they recur in the family, but the
    // certificate requires their sign conditions to hold as well
    check_signs(1.0, 0);

    cert.backward_euler = stability_verdict(cert.family_roots, 1.0);
    cert.crank_nicolson = stability_verdict(cert.family_roots, 0.5);
    cert.certified = cert.certified && cert.backward_euler.stable && cert.crank_nicolson.stable;

    // recurrence cross-check; companion seeding plus pointwise refinement is
    // dependable through the sweep sizes this certificate is used at
    if (cp.n_space <= 64) {
        cert.charpoly_checked = true;
        cert.charpoly_consistent = true;
        const ComplexList d1_roots = charpoly_roots(lambda_affine_coeffs(constant_to_stencil(cp)));
        for (const Complex& root : d1_roots) {
            double best = 1e300;
            for (const Complex& fam : cert.family_roots)
                best = std::min(best, std::abs(root - fam) / std::max(1e-30, std::abs(fam)));
            if (best > 1e-7) {
                cert.charpoly_consistent = false;
                cert.certified = false;
                cert.detail = "recurrence root " + std::to_string(root.real()) +
                              " not matched by the eigenvalue family";
                break;
            }
        }
    }
    return cert;
}

}  // namespace cdstab
