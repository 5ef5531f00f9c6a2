#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "cdstab/dense.hpp"
#include "cdstab/eigen.hpp"
#include "cdstab/iterations.hpp"
#include "cdstab/tridiagonal.hpp"

using namespace cdstab;

namespace {

std::mt19937 rng_for(const char* tag) {
    std::seed_seq seq(tag, tag + std::char_traits<char>::length(tag));
    return std::mt19937(seq);
}

TridiagonalMatrix random_diag_dominant(std::mt19937& rng, int n) {
    std::uniform_real_distribution<double> off(-1.0, 1.0);
    TridiagonalMatrix A(n);
    for (int i = 0; i < n; ++i) {
        double s = 0.0;
        if (i > 0) {
            A.sub[i - 1] = off(rng);
            s += std::fabs(A.sub[i - 1]);
        }
        if (i + 1 < n) {
            A.super[i] = off(rng);
            s += std::fabs(A.super[i]);
        }
        A.diag[i] = s + 1.0 + std::fabs(off(rng));
    }
    return A;
}

DenseMatrix random_dense(std::mt19937& rng, int n) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    DenseMatrix A(n, n);
    for (double& x : A.a) x = u(rng);
    return A;
}

// Cyclic Jacobi eigenvalues for symmetric matrices; test-local oracle, kept
// independent of the library's QL path.
std::vector<double> jacobi_eigenvalues(DenseMatrix A) {
    const int n = A.rows;
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) off += A(i, j) * A(i, j);
        if (off < 1e-24) break;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) {
                if (A(p, q) == 0.0) continue;
                const double theta = (A(q, q) - A(p, p)) / (2.0 * A(p, q));
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0), s = t * c;
                for (int k = 0; k < n; ++k) {
                    const double akp = A(k, p), akq = A(k, q);
                    A(k, p) = c * akp - s * akq;
                    A(k, q) = s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    const double apk = A(p, k), aqk = A(q, k);
                    A(p, k) = c * apk - s * aqk;
                    A(q, k) = s * apk + c * aqk;
                }
            }
    }
    std::vector<double> d(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) d[i] = A(i, i);
    std::sort(d.begin(), d.end());
    return d;
}

}  // namespace

TEST_CASE("thomas_solve: identity and a hand-checked 3x3") {
    TridiagonalMatrix I = TridiagonalMatrix::identity(3);
    CHECK(thomas_solve(I, {1, 2, 3}) == std::vector<double>{1, 2, 3});

    TridiagonalMatrix A(3);
    A.diag = {2, 2, 2};
    A.sub = {1, 1};
    A.super = {1, 1};
    const std::vector<double> x = thomas_solve(A, {4, 8, 8});
    // verified by multiplying back: A*(1,2,3) = (4,8,8)
    CHECK(x[0] == doctest::Approx(1.0));
    CHECK(x[1] == doctest::Approx(2.0));
    CHECK(x[2] == doctest::Approx(3.0));
}

TEST_CASE("thomas_solve reports the zero-pivot row") {
    TridiagonalMatrix A(3);   // all-zero diagonal
    try {
        thomas_solve(A, {1, 1, 1});
        FAIL("expected SingularMatrixError");
    } catch (const SingularMatrixError& e) {
        CHECK(e.row == 0);
    }
}

TEST_CASE("thomas residual stays small on well-conditioned systems") {
    auto rng = rng_for("thomas-residual");
    for (int n : {5, 40, 200}) {
        TridiagonalMatrix A = random_diag_dominant(rng, n);
        std::uniform_real_distribution<double> u(-5.0, 5.0);
        std::vector<double> rhs(static_cast<std::size_t>(n));
        for (double& v : rhs) v = u(rng);
        const std::vector<double> x = thomas_solve(A, rhs);
        const std::vector<double> back = A.multiply(x);
        double rhs_norm = 0.0, res = 0.0;
        for (int i = 0; i < n; ++i) {
            rhs_norm = std::max(rhs_norm, std::fabs(rhs[i]));
            res = std::max(res, std::fabs(back[i] - rhs[i]));
        }
        CHECK(res <= 1e-10 * (1.0 + rhs_norm));
    }
}

TEST_CASE("dense_from_tridiagonal embeds exactly and round-trips") {
    TridiagonalMatrix A1(1);
    A1.diag = {7.0};
    const DenseMatrix D1 = dense_from_tridiagonal(A1);
    CHECK(D1(0, 0) == 7.0);

    TridiagonalMatrix A2(2);
    A2.diag = {1.0, 2.0};
    A2.sub = {3.0};
    A2.super = {4.0};
    const DenseMatrix D2 = dense_from_tridiagonal(A2);
    CHECK(D2(0, 0) == 1.0);
    CHECK(D2(0, 1) == 4.0);
    CHECK(D2(1, 0) == 3.0);
    CHECK(D2(1, 1) == 2.0);

    auto rng = rng_for("band-roundtrip");
    TridiagonalMatrix A = random_diag_dominant(rng, 9);
    const TridiagonalMatrix back = band_from_dense(dense_from_tridiagonal(A));
    CHECK(back.diag == A.diag);
    CHECK(back.sub == A.sub);
    CHECK(back.super == A.super);
}

TEST_CASE("dense_solve: identity, random residual, singular error") {
    auto rng = rng_for("dense-solve");
    DenseMatrix B = random_dense(rng, 5);
    const DenseMatrix X0 = dense_solve(DenseMatrix::identity(5), B);
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) CHECK(X0(i, j) == B(i, j));

    DenseMatrix A = random_dense(rng, 5);
    for (int i = 0; i < 5; ++i) A(i, i) += 4.0;
    const DenseMatrix X = dense_solve(A, B);
    for (int j = 0; j < 5; ++j)
        for (int i = 0; i < 5; ++i) {
            double s = 0.0;
            for (int k = 0; k < 5; ++k) s += A(i, k) * X(k, j);
            CHECK(std::fabs(s - B(i, j)) < 1e-10);
        }

    DenseMatrix S(3, 3);   // rank 1
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) S(i, j) = (i + 1.0) * (j + 1.0);
    CHECK_THROWS_AS(dense_solve(S, DenseMatrix::identity(3)), SingularMatrixError);
}

TEST_CASE("LU transposed solve matches solving the transposed matrix") {
    auto rng = rng_for("lu-transpose");
    DenseMatrix A = random_dense(rng, 7);
    for (int i = 0; i < 7; ++i) A(i, i) += 3.0;
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    std::vector<double> rhs(7);
    for (double& v : rhs) v = u(rng);
    LuFactor f(A);
    const std::vector<double> x = f.solve_transposed(rhs);
    for (int j = 0; j < 7; ++j) {
        double s = 0.0;
        for (int i = 0; i < 7; ++i) s += A(i, j) * x[i];   // A^T x
        CHECK(std::fabs(s - rhs[j]) < 1e-11);
    }
}

TEST_CASE("eigenvalues_dense: diagonal, rotation, companion") {
    DenseMatrix D(3, 3);
    D(0, 0) = 1;
    D(1, 1) = 2;
    D(2, 2) = 3;
    ComplexList ev = eigenvalues_dense(D);
    std::sort(ev.begin(), ev.end(), [](Complex a, Complex b) { return a.real() < b.real(); });
    CHECK(ev[0].real() == doctest::Approx(1.0));
    CHECK(ev[1].real() == doctest::Approx(2.0));
    CHECK(ev[2].real() == doctest::Approx(3.0));

    DenseMatrix R(2, 2);
    R(0, 1) = -1;
    R(1, 0) = 1;
    ev = eigenvalues_dense(R);
    std::sort(ev.begin(), ev.end(), [](Complex a, Complex b) { return a.imag() < b.imag(); });
    CHECK(ev[0].real() == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(ev[0].imag() == doctest::Approx(-1.0));
    CHECK(ev[1].imag() == doctest::Approx(1.0));

    DenseMatrix C(2, 2);   // companion of l^2 - 3l + 2
    C(1, 0) = 1.0;
    C(0, 1) = -2.0;
    C(1, 1) = 3.0;
    ev = eigenvalues_dense(C);
    std::sort(ev.begin(), ev.end(), [](Complex a, Complex b) { return a.real() < b.real(); });
    CHECK(ev[0].real() == doctest::Approx(1.0));
    CHECK(ev[1].real() == doctest::Approx(2.0));
}

TEST_CASE("eigenvalues_dense on random symmetric matrices is real and matches Jacobi") {
    auto rng = rng_for("sym-eig");
    for (int trial = 0; trial < 5; ++trial) {
        DenseMatrix A = random_dense(rng, 20);
        double norm = 0.0;
        for (int i = 0; i < 20; ++i)
            for (int j = 0; j <= i; ++j) {
                const double v = 0.5 * (A(i, j) + A(j, i));
                A(i, j) = v;
                A(j, i) = v;
                norm = std::max(norm, std::fabs(v));
            }
        ComplexList ev = eigenvalues_dense(A);
        std::vector<double> re;
        for (const Complex& z : ev) {
            CHECK(std::fabs(z.imag()) <= 1e-9 * 20 * norm);
            re.push_back(z.real());
        }
        std::sort(re.begin(), re.end());
        const std::vector<double> jac = jacobi_eigenvalues(A);
        for (int i = 0; i < 20; ++i)
            CHECK(std::fabs(re[i] - jac[i]) <= 1e-8 * std::max(1.0, std::fabs(jac[i])));
    }
}

TEST_CASE("symmetric_eigenvalues matches the Jacobi cross-check") {
    auto rng = rng_for("ql-vs-jacobi");
    DenseMatrix A = random_dense(rng, 24);
    for (int i = 0; i < 24; ++i)
        for (int j = 0; j <= i; ++j) {
            const double v = 0.5 * (A(i, j) + A(j, i));
            A(i, j) = v;
            A(j, i) = v;
        }
    const std::vector<double> ql = symmetric_eigenvalues(A);
    const std::vector<double> jac = jacobi_eigenvalues(A);
    for (int i = 0; i < 24; ++i)
        CHECK(std::fabs(ql[i] - jac[i]) <= 1e-9 * std::max(1.0, std::fabs(jac[i])));
}

TEST_CASE("spectral_norm: identity, signed diagonal, eigenvalue cross-check") {
    CHECK(spectral_norm(DenseMatrix::identity(4)) == doctest::Approx(1.0));
    DenseMatrix D(2, 2);
    D(0, 0) = 3.0;
    D(1, 1) = -5.0;
    CHECK(spectral_norm(D) == doctest::Approx(5.0));

    auto rng = rng_for("specnorm");
    const DenseMatrix A = random_dense(rng, 20);
    const double sigma = spectral_norm(A);
    const std::vector<double> lam = symmetric_eigenvalues(gram_product(A));
    CHECK(sigma == doctest::Approx(std::sqrt(lam.back())).epsilon(1e-9));
}

TEST_CASE("min_singular_value: identity, diagonal, and 1/||X^{-1}||") {
    CHECK(min_singular_value(TridiagonalMatrix::identity(5)) == doctest::Approx(1.0));
    TridiagonalMatrix D(2);
    D.diag = {2.0, 4.0};
    CHECK(min_singular_value(D) == doctest::Approx(2.0));

    auto rng = rng_for("minsv");
    const TridiagonalMatrix A = random_diag_dominant(rng, 30);
    const double smin = min_singular_value(A);
    const std::vector<double> lam = symmetric_eigenvalues(gram_product(dense_from_tridiagonal(A)));
    CHECK(smin == doctest::Approx(std::sqrt(lam.front())).epsilon(1e-8));
}

TEST_CASE("thomas_solve agrees with dense_solve on diagonally dominant systems") {
    auto rng = rng_for("thomas-vs-dense");
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (int n : {3, 17, 120, 200}) {
        TridiagonalMatrix A = random_diag_dominant(rng, n);
        std::vector<double> rhs(static_cast<std::size_t>(n));
        for (double& v : rhs) v = u(rng);
        const std::vector<double> xt = thomas_solve(A, rhs);
        DenseMatrix R(n, 1);
        for (int i = 0; i < n; ++i) R(i, 0) = rhs[i];
        const DenseMatrix xd = dense_solve(dense_from_tridiagonal(A), R);
        for (int i = 0; i < n; ++i)
            CHECK(std::fabs(xt[i] - xd(i, 0)) <= 1e-9 * std::max(1.0, std::fabs(xd(i, 0))));
    }
}

TEST_CASE("parallel kernels agree bitwise with their serial references") {
    auto rng = rng_for("kernels");
    const int n = 150;
    const DenseMatrix A = random_dense(rng, n);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> x(static_cast<std::size_t>(n));
    for (double& v : x) v = u(rng);

    std::vector<double> y1, y2;
    matvec(A, x, y1);
    matvec_serial(A, x, y2);
    CHECK(y1 == y2);

    matvec_transposed(A, x, y1);
    matvec_transposed_serial(A, x, y2);
    CHECK(y1 == y2);

    const DenseMatrix G1 = gram_product(A);
    const DenseMatrix G2 = gram_product_serial(A);
    CHECK(G1.a == G2.a);

    const TridiagonalMatrix T = random_diag_dominant(rng, n);
    const DenseMatrix W1 = solve_columns(T, A);
    const DenseMatrix W2 = solve_columns_serial(T, A);
    CHECK(W1.a == W2.a);
}
