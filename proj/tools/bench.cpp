// Micro-benchmark comparing the OpenMP kernels against their serial
// reference implementations on the sizes the norm/condition tables use.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

#include "cdstab/dense.hpp"
#include "cdstab/demo.hpp"
#include "cdstab/iterations.hpp"
#include "cdstab/parallel.hpp"
#include "cdstab/timestepper.hpp"

using namespace cdstab;

namespace {

double time_of(const std::function<void()>& body, int reps) {
    // warm-up
    body();
    const auto t0 = std::chrono::steady_clock::now();
    for (int i = 0; i < reps; ++i) body();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() / reps;
}

void report(const std::string& name, double serial, double parallel) {
    std::printf("%-28s serial %10.4f ms   parallel %10.4f ms   speedup %5.2fx\n", name.c_str(),
                serial * 1e3, parallel * 1e3, serial / parallel);
}

}  // namespace

int main(int argc, char** argv) {
    const int n = argc > 1 ? std::atoi(argv[1]) : 800;
    std::printf("kernel benchmark at order %d, %d thread(s)\n", n, max_threads());

    std::mt19937 rng(1234);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    DenseMatrix A(n, n);
    for (double& x : A.a) x = u(rng);
    std::vector<double> x(static_cast<std::size_t>(n));
    for (double& v : x) v = u(rng);
    std::vector<double> y;

    report("matvec",
           time_of([&] { matvec_serial(A, x, y); }, 20),
           time_of([&] { matvec(A, x, y); }, 20));
    report("matvec_transposed",
           time_of([&] { matvec_transposed_serial(A, x, y); }, 20),
           time_of([&] { matvec_transposed(A, x, y); }, 20));
    report("gram_product",
           time_of([&] { gram_product_serial(A); }, 2),
           time_of([&] { gram_product(A); }, 2));

    const StencilCoefficients st = demo_stencil(demo_problem(), n, 1.0 / (n * n));
    SchemeMatrices sm = assemble_matrices(st, 1.0);
    const DenseMatrix Yd = dense_from_tridiagonal(sm.Y);
    report("solve_columns (W = X^-1 Y)",
           time_of([&] { solve_columns_serial(sm.X, Yd); }, 3),
           time_of([&] { solve_columns(sm.X, Yd); }, 3));

    std::printf("reference analyses at this order:\n");
    const auto t0 = std::chrono::steady_clock::now();
    const double y2 = spectral_norm(Yd);
    const double t_y2 = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("  spectral_norm(Y)      = %12.2f   (%.2f s)\n", y2, t_y2);
    const auto t1 = std::chrono::steady_clock::now();
    const double smin = min_singular_value(sm.X);
    const double t_smin =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t1).count();
    std::printf("  1/min_singular(X)     = %12.6e (%.2f s)\n", 1.0 / smin, t_smin);
    return 0;
}
