#pragma once

#include "cdstab/charpoly.hpp"
#include "cdstab/discretization.hpp"

namespace cdstab {

// Constant-coefficient equation u_v + c u_z - c u_zz = 0 on a uniform grid.
// Any constant pair (a, b) with a != 0, b > 0 reduces to this single
// coefficient via transform_to_c.
struct ConstantProblem {
    double c = 1.0;
    double dz = 0.1, dv = 0.01;
    int n_space = 2;

    double d() const { return dv / (dz * dz); }   // parabolic mesh ratio

    void validate() const;   // c > 0, dz > 0, dv > 0, N >= 2
};

// c = a^2 / b: substituting u = (b/a) psi, z = (a/b) x into the constant
// equation psi_v + a psi_x - b psi_xx = 0 gives u_v + c u_z - c u_zz = 0.
double transform_to_c(double a, double b);

// Scheme constants of the reduced equation; the (c1,c2,c3 | y1,y2,y3) here
// equal the general stencil's (p,q,r | l,m,n) rows when a = b = c.
struct ConstantStencil {
    double c1, c2, c3;
    double y1, y2, y3;
};

ConstantStencil constant_stencil(const ConstantProblem& cp);

// The reduced equation's weights replicated into a full interior stencil,
// for feeding the general charpoly machinery.
StencilCoefficients constant_to_stencil(const ConstantProblem& cp);

// Eigenvalue of the phi = 0 branch (B = 0): lambda = (6c/5)(2d + dv/6),
// real and positive for positive c.
double phi_zero_eigenvalue(const ConstantProblem& cp);

// Both roots of the quadratic family at phi = cos^2(k pi / N):
//   (c2^2 - 4 c1 c3 phi) l^2 - (2 c2 y2 - 4 c1 y3 phi - 4 c3 y1 phi) l
//     + (y2^2 - 4 y1 y3 phi) = 0,
// solved with the cancellation-free quadratic formula. The phi = 0 case
// collapses to the single phi_zero_eigenvalue.
ComplexList eigen_family(const ConstantProblem& cp, int k);

// Sign-condition certificate: for every k (and the discriminant-zero case
// phi = 1) the lambda^2 coefficient, the negated lambda coefficient and the
// constant term must all be positive, which forces positive real parts by
// the sum/product-of-roots argument. Cross-checked against the recurrence
// polynomial's roots for small N.
struct ConstantCertificate {
    bool certified = false;
    int offending_k = -1;             // -1 when nothing failed; 0 marks phi = 1
    ComplexList family_roots;         // union over k, plus the phi = 0 value
    StabilityReport backward_euler;   // verdict over family_roots, theta = 1
    StabilityReport crank_nicolson;   // verdict over family_roots, theta = 1/2
    bool charpoly_checked = false;    // recurrence cross-check ran (N <= 20)
    bool charpoly_consistent = false;
    std::string detail;
};

ConstantCertificate stability_certificate(const ConstantProblem& cp);

}  // namespace cdstab
