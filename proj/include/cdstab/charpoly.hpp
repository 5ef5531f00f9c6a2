#pragma once

#include <string>

#include "cdstab/dense.hpp"
#include "cdstab/discretization.hpp"
#include "cdstab/tridiagonal.hpp"

namespace cdstab {

// Dense real polynomial in lambda, ascending coefficients. `scale` is the
// positive factor removed during renormalization: the represented polynomial
// is scale * sum coeffs[k] lambda^k. Roots do not depend on scale.
struct Polynomial {
    std::vector<double> coeffs{0.0};
    double scale = 1.0;

    int degree() const;          // index of last nonzero coefficient, -1 if zero
    void trim();                 // drops trailing zero coefficients
    double eval(double x) const;
    Complex eval(Complex x) const;
};

// c0 + c1 * lambda
struct AffinePair {
    double c0 = 0.0, c1 = 0.0;
};

// The per-row first-degree factors of the pencil rows:
//   A_j = n_j - lambda r_j,  B_j = m_j - lambda q_j,  C_j = l_j - lambda p_j.
struct LambdaAffineTriple {
    std::vector<AffinePair> A, B, C;

    int n_space() const { return static_cast<int>(A.size()) + 1; }
};

LambdaAffineTriple lambda_affine_coeffs(const StencilCoefficients& st);

struct CharpolyPair {
    Polynomial d1, d2;
};

// The characteristic polynomial of W = X^{-1} Y as the coefficient of x_1
// in the three-term recurrence
//   R_{j+1} = -B_j R_j - C_j A_{j-1} R_{j-1},   R_0 = 1, R_1 = x_1, A_0 = 1,
// which costs O(N) affine multiplications. Every eigenvalue of W is a root
// of d1. d2 is the x_1-free part; it takes no part in any verdict but is
// cheap to carry and handy for diffing against the exponential expansion.
CharpolyPair charpoly_D1(const LambdaAffineTriple& abc);

struct EnumeratedCharpoly {
    Polynomial d1;
    long count = 0;   // number of admissible sign sequences, a Fibonacci number
};

// Exponential-cost expansion of the same polynomial as a sum over the
// admissible sign sequences; retained purely as a test oracle for
// charpoly_D1. Capped at N <= 14.
EnumeratedCharpoly enumerate_charpoly(const LambdaAffineTriple& abc);

// Roots of a polynomial through its balanced companion matrix. Each root is
// residual-checked: |p(root)| <= 1e-8 * max|coeff| * (1+|root|)^degree.
ComplexList polynomial_roots(const Polynomial& p);

// Roots of d1 for a given stencil: companion-matrix estimates refined by
// Aberth-Ehrlich simultaneous iteration that evaluates the recurrence
// pointwise. The pointwise evaluation is backward stable, which the
// monomial coefficients of high-degree d1 are not, so this is the accurate
// route for N beyond ~20.
ComplexList charpoly_roots(const LambdaAffineTriple& abc);

// d1 and its lambda-derivative evaluated by the scalar recurrence; the two
// values share an unrecorded common scale, so only their ratio is
// meaningful. Exposed for tests.
struct D1Value {
    Complex value, derivative;
};
D1Value d1_recurrence_eval(const LambdaAffineTriple& abc, Complex lambda);

// Verdict per the positive-real-part criterion. Amplification moduli are
// |1/(1+lambda)| for theta = 1 and |(1-lambda/2)/(1+lambda/2)| for
// theta = 1/2; the scheme is certified stable when every root has positive
// real part (relative tolerance) and every modulus is below one.
struct StabilityReport {
    int n_space = 0;
    double theta = 1.0;
    ComplexList roots;
    double min_real_part = 0.0;
    std::vector<double> amplification_moduli;
    double spectral_radius = 0.0;
    bool degree_deficient = false;   // d1 collapsed below degree N-1
    bool oracle_checked = false;     // dense eigenvalue cross-check ran
    bool oracle_consistent = false;  // ... and every root was matched
    bool stable = false;
    std::string detail;              // human-readable reason when not certified
};

StabilityReport stability_verdict(const ComplexList& roots, double theta);

// Whole pipeline for one stencil: recurrence polynomial, refined roots,
// verdict. Flags a degree collapse below N-1. Up to order 400 the roots are
// also matched against the dense eigenvalues of X^{-1} Y (the positivity
// theorem makes roots necessary for eigenvalues, not the converse, and the
// coefficient-seeded refinement loses accuracy somewhere beyond N ~ 64);
// any disagreement above 1e-6 relative withdraws the certification.
StabilityReport analyze_stability(const StencilCoefficients& st, double theta);

// Eigenvalues of W = X^{-1} Y with W formed densely; the independent route
// the difference-equation polynomial is checked against. Order capped at
// 1000.
ComplexList eigen_oracle(const TridiagonalMatrix& X, const TridiagonalMatrix& Y);

// Sum-of-products form of d1 over the admissible sign sequences, e.g.
// "B1B2 - A1C2" for N = 3. Terms are ordered lexicographically. N <= 8.
std::string symbolic_d1(int n_space);

}  // namespace cdstab
