#include "cdstab/iterations.hpp"

#include <cmath>

#include "cdstab/eigen.hpp"

namespace cdstab {

namespace {

constexpr double kRelTol = 1e-12;

double norm2(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

std::vector<double> ones_start(int n) {
    return std::vector<double>(static_cast<std::size_t>(n), 1.0 / std::sqrt(double(n)));
}

}  // namespace

double spectral_norm(const DenseMatrix& A) {
    if (A.rows == 0 || A.cols == 0) return 0.0;
    std::vector<double> v = ones_start(A.cols), w, u;
    double sigma = 0.0, prev = -1.0;
    const int budget = 10000;
    for (int it = 0; it < budget; ++it) {
        matvec(A, v, w);
        sigma = norm2(w);              // ||A v|| for unit v
        if (sigma == 0.0) return 0.0;  // start vector in the null space of a zero map
        matvec_transposed(A, w, u);
        double nu = norm2(u);
        if (nu == 0.0) return sigma;
        for (std::size_t i = 0; i < u.size(); ++i) v[i] = u[i] / nu;
        if (std::fabs(sigma - prev) <= kRelTol * sigma) return sigma;
        prev = sigma;
    }
    throw NonConvergenceError("spectral_norm power iteration exceeded " +
                              std::to_string(budget) + " sweeps");
}

double min_singular_value(const TridiagonalMatrix& A) {
    const int n = A.order();
    if (n == 0) return 0.0;
    TridiagonalFactor f(A);
    TridiagonalFactor ft(A.transposed());
    std::vector<double> v = ones_start(n);
    double sigma = 0.0, prev = -1.0;
    const long budget = 500000;
    for (long it = 0; it < budget; ++it) {
        std::vector<double> w = f.solve(v);       // w = A^{-1} v
        std::vector<double> u = ft.solve(w);      // u = A^{-T} w = (A A^T)^{-1} v
        double nu = norm2(u);
        if (nu == 0.0)
            throw NonConvergenceError("inverse iteration start vector annihilated");
        sigma = 1.0 / std::sqrt(nu);              // Rayleigh estimate of sigma_min
        for (int i = 0; i < n; ++i) v[i] = u[i] / nu;
        if (std::fabs(sigma - prev) <= kRelTol * sigma) return sigma;
        prev = sigma;
    }
    throw NonConvergenceError("min_singular_value inverse iteration exceeded " +
                              std::to_string(budget) + " steps");
}

SingularExtremes singular_extremes(const DenseMatrix& A) {
    std::vector<double> lam = symmetric_eigenvalues(gram_product(A));
    double lo = lam.front(), hi = lam.back();
    if (lo < 0.0) lo = 0.0;   // Gram eigenvalues are >= 0 up to roundoff
    return {std::sqrt(lo), std::sqrt(hi)};
}

}  // namespace cdstab
