#include "cdstab/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace cdstab {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

double sign_like(double magnitude, double sign_of) {
    return sign_of >= 0.0 ? std::fabs(magnitude) : -std::fabs(magnitude);
}

// Parlett-Reinsch balancing, scaling phase only (powers of two, so no
// rounding is introduced). Companion matrices of renormalized polynomials
// are badly scaled without this.
void balance(DenseMatrix& A) {
    const int n = A.rows;
    const double radix = 2.0, sq = radix * radix;
    bool changed = true;
    while (changed) {
        changed = false;
        for (int i = 0; i < n; ++i) {
            double r = 0.0, c = 0.0;
            for (int j = 0; j < n; ++j)
                if (j != i) {
                    c += std::fabs(A(j, i));
                    r += std::fabs(A(i, j));
                }
            if (c == 0.0 || r == 0.0) continue;
            double g = r / radix, f = 1.0, s = c + r;
            while (c < g) { f *= radix; c *= sq; }
            g = r * radix;
            while (c > g) { f /= radix; c /= sq; }
            if ((c + r) / f < 0.95 * s) {
                changed = true;
                const double inv = 1.0 / f;
                for (int j = 0; j < n; ++j) A(i, j) *= inv;
                for (int j = 0; j < n; ++j) A(j, i) *= f;
            }
        }
    }
}

// Householder reduction to upper Hessenberg form, eigenvalues only.
void hessenberg(DenseMatrix& A) {
    const int n = A.rows;
    std::vector<double> v(static_cast<std::size_t>(n)), w(static_cast<std::size_t>(n));
    for (int k = 0; k < n - 2; ++k) {
        double scale = 0.0;
        for (int i = k + 1; i < n; ++i) scale += std::fabs(A(i, k));
        if (scale == 0.0) continue;
        double h = 0.0;
        for (int i = k + 1; i < n; ++i) {
            v[i] = A(i, k) / scale;
            h += v[i] * v[i];
        }
        double g = -sign_like(std::sqrt(h), v[k + 1]);
        h -= v[k + 1] * g;
        v[k + 1] -= g;
        // A <- (I - vv^T/h) A (I - vv^T/h)
        for (int j = 0; j < n; ++j) {           // left
            double s = 0.0;
            for (int i = k + 1; i < n; ++i) s += v[i] * A(i, j);
            s /= h;
            for (int i = k + 1; i < n; ++i) A(i, j) -= s * v[i];
        }
        for (int i = 0; i < n; ++i) {           // right
            double s = 0.0;
            for (int j = k + 1; j < n; ++j) s += A(i, j) * v[j];
            s /= h;
            for (int j = k + 1; j < n; ++j) A(i, j) -= s * v[j];
        }
        A(k + 1, k) = scale * g;
        for (int i = k + 2; i < n; ++i) A(i, k) = 0.0;
    }
}

// Francis double-shift QR on a Hessenberg matrix, eigenvalues only.
// Exceptional shifts after 10 and 20 stalled iterations per block; the
// total sweep budget is 10 n^2.
ComplexList hessenberg_qr(DenseMatrix& H) {
    const int n = H.rows;
    ComplexList eig(static_cast<std::size_t>(n));
    std::vector<bool> have(static_cast<std::size_t>(n), false);

    double anorm = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = std::max(i - 1, 0); j < n; ++j) anorm += std::fabs(H(i, j));
    if (anorm == 0.0) return eig;   // zero matrix

    long budget = 10L * n * n + 100;
    long sweeps = 0;
    int hi = n - 1;
    double shift_total = 0.0;
    int its = 0;
    double x, y, z, p = 0.0, q = 0.0, r = 0.0, s, w, u, v;

    while (hi >= 0) {
        // locate a negligible subdiagonal entry
        int lo = hi;
        while (lo > 0) {
            s = std::fabs(H(lo - 1, lo - 1)) + std::fabs(H(lo, lo));
            if (s == 0.0) s = anorm;
            if (std::fabs(H(lo, lo - 1)) <= kEps * s) {
                H(lo, lo - 1) = 0.0;
                break;
            }
            --lo;
        }
        x = H(hi, hi);
        if (lo == hi) {
            eig[hi] = Complex(x + shift_total, 0.0);
            have[hi] = true;
            --hi;
            its = 0;
            continue;
        }
        y = H(hi - 1, hi - 1);
        w = H(hi, hi - 1) * H(hi - 1, hi);
        if (lo == hi - 1) {
            p = 0.5 * (y - x);
            q = p * p + w;
            z = std::sqrt(std::fabs(q));
            x += shift_total;
            if (q >= 0.0) {
                z = p + sign_like(z, p);
                eig[hi - 1] = eig[hi] = Complex(x + z, 0.0);
                if (z != 0.0) eig[hi] = Complex(x - w / z, 0.0);
            } else {
                eig[hi - 1] = Complex(x + p, -z);
                eig[hi] = Complex(x + p, z);
            }
            have[hi] = have[hi - 1] = true;
            hi -= 2;
            its = 0;
            continue;
        }
        if (its == 30) {
            int done = 0;
            for (bool b : have) done += b;
            throw EigenFailure("QR iteration stalled with " + std::to_string(done) + " of " +
                                   std::to_string(n) + " eigenvalues isolated",
                               eig);
        }
        if (++sweeps > budget) {
            int done = 0;
            for (bool b : have) done += b;
            throw EigenFailure("QR sweep budget exhausted with " + std::to_string(done) + " of " +
                                   std::to_string(n) + " eigenvalues isolated",
                               eig);
        }
        if (its == 10 || its == 20) {   // exceptional shift
            shift_total += x;
            for (int i = 0; i <= hi; ++i) H(i, i) -= x;
            s = std::fabs(H(hi, hi - 1)) + std::fabs(H(hi - 1, hi - 2));
            x = y = 0.75 * s;
            w = -0.4375 * s * s;
        }
        ++its;
        // find two consecutive small subdiagonals
        int m = hi - 2;
        for (; m >= lo; --m) {
            z = H(m, m);
            r = x - z;
            s = y - z;
            p = (r * s - w) / H(m + 1, m) + H(m, m + 1);
            q = H(m + 1, m + 1) - z - r - s;
            r = H(m + 2, m + 1);
            s = std::fabs(p) + std::fabs(q) + std::fabs(r);
            p /= s;
            q /= s;
            r /= s;
            if (m == lo) break;
            u = std::fabs(H(m, m - 1)) * (std::fabs(q) + std::fabs(r));
            v = std::fabs(p) *
                (std::fabs(H(m - 1, m - 1)) + std::fabs(z) + std::fabs(H(m + 1, m + 1)));
            if (u <= kEps * v) break;
        }
        for (int i = m + 2; i <= hi; ++i) {
            H(i, i - 2) = 0.0;
            if (i > m + 2) H(i, i - 3) = 0.0;
        }
        // double QR step on rows/columns lo..hi
        for (int k = m; k <= hi - 1; ++k) {
            if (k != m) {
                p = H(k, k - 1);
                q = H(k + 1, k - 1);
                r = (k != hi - 1) ? H(k + 2, k - 1) : 0.0;
                x = std::fabs(p) + std::fabs(q) + std::fabs(r);
                if (x != 0.0) {
                    p /= x;
                    q /= x;
                    r /= x;
                }
            }
            s = sign_like(std::sqrt(p * p + q * q + r * r), p);
            if (s == 0.0) continue;
            if (k == m) {
                if (lo != m) H(k, k - 1) = -H(k, k - 1);
            } else {
                H(k, k - 1) = -s * x;
            }
            p += s;
            x = p / s;
            y = q / s;
            z = r / s;
            q /= p;
            r /= p;
            for (int j = k; j <= hi; ++j) {     // row modification
                p = H(k, j) + q * H(k + 1, j);
                if (k != hi - 1) {
                    p += r * H(k + 2, j);
                    H(k + 2, j) -= p * z;
                }
                H(k + 1, j) -= p * y;
                H(k, j) -= p * x;
            }
            const int last = std::min(hi, k + 3);
            for (int i = lo; i <= last; ++i) {  // column modification
                p = x * H(i, k) + y * H(i, k + 1);
                if (k != hi - 1) {
                    p += z * H(i, k + 2);
                    H(i, k + 2) -= p * r;
                }
                H(i, k + 1) -= p * q;
                H(i, k) -= p;
            }
        }
    }
    return eig;
}

}  // namespace

ComplexList eigenvalues_dense(DenseMatrix A) {
    if (!A.square()) throw Error("eigenvalues_dense requires a square matrix");
    if (A.rows == 0) return {};
    if (A.rows == 1) return {Complex(A(0, 0), 0.0)};
    balance(A);
    hessenberg(A);
    return hessenberg_qr(A);
}

std::vector<double> symmetric_eigenvalues(DenseMatrix S) {
    if (!S.square()) throw Error("symmetric_eigenvalues requires a square matrix");
    const int n = S.rows;
    if (n == 0) return {};
    std::vector<double> d(static_cast<std::size_t>(n)), e(static_cast<std::size_t>(n), 0.0);

    // Householder tridiagonalization (lower triangle, eigenvalues only).
    for (int i = n - 1; i >= 1; --i) {
        const int l = i - 1;
        double h = 0.0, scale = 0.0;
        if (l > 0) {
            for (int k = 0; k <= l; ++k) scale += std::fabs(S(i, k));
            if (scale == 0.0) {
                e[i] = S(i, l);
            } else {
                for (int k = 0; k <= l; ++k) {
                    S(i, k) /= scale;
                    h += S(i, k) * S(i, k);
                }
                double f = S(i, l);
                double g = f >= 0.0 ? -std::sqrt(h) : std::sqrt(h);
                e[i] = scale * g;
                h -= f * g;
                S(i, l) = f - g;
                f = 0.0;
                for (int j = 0; j <= l; ++j) {
                    g = 0.0;
                    for (int k = 0; k <= j; ++k) g += S(j, k) * S(i, k);
                    for (int k = j + 1; k <= l; ++k) g += S(k, j) * S(i, k);
                    e[j] = g / h;
                    f += e[j] * S(i, j);
                }
                const double hh = f / (h + h);
                for (int j = 0; j <= l; ++j) {
                    f = S(i, j);
                    e[j] = g = e[j] - hh * f;
                    for (int k = 0; k <= j; ++k) S(j, k) -= f * e[k] + g * S(i, k);
                }
            }
        } else {
            e[i] = S(i, l);
        }
        d[i] = h;
    }
    for (int i = 0; i < n; ++i) d[i] = S(i, i);

    // Implicit-shift QL on the tridiagonal (d, e).
    for (int i = 1; i < n; ++i) e[i - 1] = e[i];
    e[n - 1] = 0.0;
    for (int l = 0; l < n; ++l) {
        int iter = 0;
        int m;
        do {
            for (m = l; m < n - 1; ++m) {
                double dd = std::fabs(d[m]) + std::fabs(d[m + 1]);
                if (std::fabs(e[m]) <= kEps * dd) break;
            }
            if (m != l) {
                if (iter++ == 50)
                    throw NonConvergenceError("QL iteration for symmetric eigenvalues stalled");
                double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                double rr = std::hypot(g, 1.0);
                g = d[m] - d[l] + e[l] / (g + sign_like(rr, g));
                double s = 1.0, c = 1.0, p = 0.0;
                bool underflow = false;
                for (int i = m - 1; i >= l; --i) {
                    double f = s * e[i];
                    double b = c * e[i];
                    rr = std::hypot(f, g);
                    e[i + 1] = rr;
                    if (rr == 0.0) {
                        d[i + 1] -= p;
                        e[m] = 0.0;
                        underflow = true;
                        break;
                    }
                    s = f / rr;
                    c = g / rr;
                    g = d[i + 1] - p;
                    rr = (d[i] - g) * s + 2.0 * c * b;
                    p = s * rr;
                    d[i + 1] = g + p;
                    g = c * rr - b;
                }
                if (underflow) continue;
                d[l] -= p;
                e[l] = g;
                e[m] = 0.0;
            }
        } while (m != l);
    }
    std::sort(d.begin(), d.end());
    return d;
}

}  // namespace cdstab
