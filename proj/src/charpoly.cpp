#include "cdstab/charpoly.hpp"

#include <algorithm>
#include <cmath>

#include "cdstab/eigen.hpp"
#include "cdstab/timestepper.hpp"

namespace cdstab {

int Polynomial::degree() const {
    for (int k = static_cast<int>(coeffs.size()) - 1; k >= 0; --k)
        if (coeffs[k] != 0.0) return k;
    return -1;
}

void Polynomial::trim() {
    while (coeffs.size() > 1 && coeffs.back() == 0.0) coeffs.pop_back();
}

double Polynomial::eval(double x) const {
    double v = 0.0;
    for (int k = static_cast<int>(coeffs.size()) - 1; k >= 0; --k) v = v * x + coeffs[k];
    return v;
}

Complex Polynomial::eval(Complex x) const {
    Complex v = 0.0;
    for (int k = static_cast<int>(coeffs.size()) - 1; k >= 0; --k) v = v * x + coeffs[k];
    return v;
}

LambdaAffineTriple lambda_affine_coeffs(const StencilCoefficients& st) {
    const std::size_t n = st.q.size();
    LambdaAffineTriple t;
    t.A.resize(n);
    t.B.resize(n);
    t.C.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        t.A[j] = {st.n[j], -st.r[j]};
        t.B[j] = {st.m[j], -st.q[j]};
        t.C[j] = {st.l[j], -st.p[j]};
    }
    return t;
}

namespace {

// out = poly * (c0 + c1*lambda)
std::vector<double> affine_multiply(const std::vector<double>& poly, const AffinePair& f) {
    std::vector<double> out(poly.size() + 1, 0.0);
    for (std::size_t k = 0; k < poly.size(); ++k) {
        out[k] += f.c0 * poly[k];
        out[k + 1] += f.c1 * poly[k];
    }
    return out;
}

std::vector<double> quadratic_multiply(const std::vector<double>& poly, const AffinePair& f,
                                       const AffinePair& g) {
    return affine_multiply(affine_multiply(poly, f), g);
}

void axpy(std::vector<double>& acc, double factor, const std::vector<double>& term) {
    if (acc.size() < term.size()) acc.resize(term.size(), 0.0);
    for (std::size_t k = 0; k < term.size(); ++k) acc[k] += factor * term[k];
}

double max_abs(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::fabs(x));
    return m;
}

}  // namespace

CharpolyPair charpoly_D1(const LambdaAffineTriple& abc) {
    const int n = static_cast<int>(abc.B.size());   // N-1 rows
    if (n < 1) throw ValidationError("charpoly needs at least one pencil row");

    // R_j = u_j(lambda) * x_1 + w_j(lambda); u and w satisfy the same
    // three-term recurrence. The common rescale keeps all four live
    // polynomials representable: p,q,r ~ 1/dv and l,m,n ~ 1/dz^2 overflow
    // raw products for moderate N otherwise. Rescaling both levels by one
    // factor preserves the linear recurrence exactly.
    std::vector<double> u_prev{0.0}, w_prev{1.0};   // R_0 = 1
    std::vector<double> u_cur{1.0}, w_cur{0.0};     // R_1 = x_1
    double scale = 1.0;

    for (int j = 1; j <= n; ++j) {
        const AffinePair B = abc.B[j - 1];
        const AffinePair C = abc.C[j - 1];
        std::vector<double> u_next, w_next;
        if (j >= 2) {
            const AffinePair A = abc.A[j - 2];
            u_next = quadratic_multiply(u_prev, C, A);
            w_next = quadratic_multiply(w_prev, C, A);
        } else {
            u_next = affine_multiply(u_prev, C);   // A_0 = 1
            w_next = affine_multiply(w_prev, C);
        }
        for (double& x : u_next) x = -x;
        for (double& x : w_next) x = -x;
        axpy(u_next, -1.0, affine_multiply(u_cur, B));
        axpy(w_next, -1.0, affine_multiply(w_cur, B));

        double f = std::max(std::max(max_abs(u_next), max_abs(w_next)),
                            std::max(max_abs(u_cur), max_abs(w_cur)));
        if (f > 0.0) {
            const double inv = 1.0 / f;
            for (double& x : u_next) x *= inv;
            for (double& x : w_next) x *= inv;
            for (double& x : u_cur) x *= inv;
            for (double& x : w_cur) x *= inv;
            scale *= f;
        }
        u_prev = std::move(u_cur);
        w_prev = std::move(w_cur);
        u_cur = std::move(u_next);
        w_cur = std::move(w_next);
    }

    CharpolyPair out;
    out.d1.coeffs = std::move(u_cur);
    out.d1.scale = scale;
    out.d1.trim();
    out.d2.coeffs = std::move(w_cur);
    out.d2.scale = scale;
    out.d2.trim();
    return out;
}

namespace {

// Depth-first walk of the admissible sign sequences: choices run backwards
// from row N-1, and a -C_j choice forces A_{j-1} below it.
//   kind 0: s_j = -B_j, 1: s_j = -C_j, 2: s_j = A_j
void enumerate_rec(const LambdaAffineTriple& abc, int j, bool forced_a,
                   const std::vector<double>& partial, double scale, long& count,
                   std::vector<double>& d1_acc, double& d1_scale) {
    auto descend = [&](int kind) {
        AffinePair f;
        double sign = 1.0;
        if (kind == 0) {
            f = abc.B[j - 1];
            sign = -1.0;
        } else if (kind == 1) {
            f = abc.C[j - 1];
            sign = -1.0;
        } else {
            f = abc.A[j - 1];
        }
        std::vector<double> next = affine_multiply(partial, f);
        if (sign < 0.0)
            for (double& x : next) x = -x;
        double m = max_abs(next);
        double next_scale = scale;
        if (m > 0.0) {
            for (double& x : next) x /= m;
            next_scale *= m;
        }
        if (j == 1) {
            ++count;
            if (kind != 1) {   // s_1 != -C_1: contributes to D1
                // merge under the larger of the two scales
                if (next_scale >= d1_scale) {
                    double ratio = d1_scale / next_scale;
                    for (double& x : d1_acc) x *= ratio;
                    d1_scale = next_scale;
                } else {
                    double ratio = next_scale / d1_scale;
                    for (double& x : next) x *= ratio;
                }
                axpy(d1_acc, 1.0, next);
            }
            return;
        }
        enumerate_rec(abc, j - 1, kind == 1, next, next_scale, count, d1_acc, d1_scale);
    };
    if (forced_a) {
        descend(2);
    } else {
        descend(0);
        descend(1);
    }
}

}  // namespace

EnumeratedCharpoly enumerate_charpoly(const LambdaAffineTriple& abc) {
    const int n = static_cast<int>(abc.B.size());   // N-1
    const int N = n + 1;
    if (N > 14)
        throw ValidationError("enumerate_charpoly capped at N <= 14 (exponential oracle)");
    long count = 0;
    std::vector<double> d1_acc{0.0};
    double d1_scale = 1.0;
    std::vector<double> unit{1.0};
    enumerate_rec(abc, n, false, unit, 1.0, count, d1_acc, d1_scale);
    EnumeratedCharpoly out;
    out.d1.coeffs = std::move(d1_acc);
    out.d1.scale = d1_scale;
    out.d1.trim();
    out.count = count;
    return out;
}

ComplexList polynomial_roots(const Polynomial& p) {
    std::vector<double> c = p.coeffs;
    while (c.size() > 1 && c.back() == 0.0) c.pop_back();
    const int deg = static_cast<int>(c.size()) - 1;
    if (deg < 1) throw ValidationError("polynomial_roots requires degree >= 1");
    const double coeff_norm = max_abs(c);

    ComplexList roots;
    if (deg == 1) {
        roots.push_back(Complex(-c[0] / c[1], 0.0));
    } else {
        DenseMatrix companion(deg, deg);
        for (int i = 1; i < deg; ++i) companion(i, i - 1) = 1.0;
        for (int i = 0; i < deg; ++i) companion(i, deg - 1) = -c[i] / c[deg];
        roots = eigenvalues_dense(std::move(companion));
    }
    for (const Complex& r : roots) {
        const double residual = std::abs(p.eval(r));
        const double bound = 1e-8 * coeff_norm * std::pow(1.0 + std::abs(r), deg);
        if (!(residual <= bound))
            throw Error("polynomial root residual check failed: |p(root)| = " +
                        std::to_string(residual) + " exceeds " + std::to_string(bound));
    }
    return roots;
}

D1Value d1_recurrence_eval(const LambdaAffineTriple& abc, Complex lambda) {
    const int n = static_cast<int>(abc.B.size());
    Complex u_prev = 0.0, du_prev = 0.0;   // u_0
    Complex u_cur = 1.0, du_cur = 0.0;     // u_1
    for (int j = 1; j <= n; ++j) {
        const AffinePair Bj = abc.B[j - 1];
        const AffinePair Cj = abc.C[j - 1];
        const Complex B = Bj.c0 + lambda * Bj.c1;
        Complex CA, dCA;
        if (j >= 2) {
            const AffinePair Aj = abc.A[j - 2];
            const Complex C = Cj.c0 + lambda * Cj.c1;
            const Complex A = Aj.c0 + lambda * Aj.c1;
            CA = C * A;
            dCA = Cj.c1 * A + C * Aj.c1;
        } else {
            CA = Cj.c0 + lambda * Cj.c1;
            dCA = Cj.c1;
        }
        Complex u_next = -B * u_cur - CA * u_prev;
        Complex du_next = -Bj.c1 * u_cur - B * du_cur - dCA * u_prev - CA * du_prev;
        double f = std::max(std::max(std::abs(u_next), std::abs(du_next)),
                            std::max(std::abs(u_cur), std::abs(du_cur)));
        if (f > 0.0) {
            u_next /= f;
            du_next /= f;
            u_cur /= f;
            du_cur /= f;
        }
        u_prev = u_cur;
        du_prev = du_cur;
        u_cur = u_next;
        du_cur = du_next;
    }
    return {u_cur, du_cur};
}

namespace {

// Starting guesses on circles whose radii come from the upper convex hull
// of (k, log|c_k|): each hull edge of horizontal extent m contributes m
// seeds on the circle of radius exp(-slope). This respects the modulus
// distribution of the roots even when it spans many decades, which a
// single starting circle does not.
ComplexList newton_polygon_seeds(const std::vector<double>& coeffs) {
    const int deg = static_cast<int>(coeffs.size()) - 1;
    std::vector<std::pair<int, double>> hull;   // (k, log|c_k|), upper hull
    for (int k = 0; k <= deg; ++k) {
        if (coeffs[k] == 0.0) continue;
        const double y = std::log(std::fabs(coeffs[k]));
        while (hull.size() >= 2) {
            const auto [k1, y1] = hull[hull.size() - 2];
            const auto [k2, y2] = hull[hull.size() - 1];
            if ((y2 - y1) * (k - k2) <= (y - y2) * (k2 - k1))
                hull.pop_back();
            else
                break;
        }
        hull.emplace_back(k, y);
    }
    ComplexList seeds;
    seeds.reserve(static_cast<std::size_t>(deg));
    // exact zero roots when the low-order coefficients vanish
    for (int k = 0; k < hull.front().first; ++k) seeds.push_back(Complex(0.0, 0.0));
    constexpr double kPhase = 0.7;   // fixed offset keeps seeds off the real axis
    for (std::size_t e = 0; e + 1 < hull.size(); ++e) {
        const auto [k1, y1] = hull[e];
        const auto [k2, y2] = hull[e + 1];
        const double radius = std::exp((y1 - y2) / (k2 - k1));
        const int count = k2 - k1;
        for (int j = 0; j < count; ++j) {
            const double angle = 2.0 * 3.14159265358979323846 * (j + 0.5) / count + kPhase;
            seeds.push_back(radius * Complex(std::cos(angle), std::sin(angle)));
        }
    }
    return seeds;
}

}  // namespace

ComplexList charpoly_roots(const LambdaAffineTriple& abc) {
    CharpolyPair cp = charpoly_D1(abc);
    if (cp.d1.degree() < 1) return {};
    cp.d1.trim();
    ComplexList lam = newton_polygon_seeds(cp.d1.coeffs);
    const std::size_t k = lam.size();

    // Aberth-Ehrlich sweeps driven by the recurrence evaluation; the
    // pairwise repulsion keeps iterates from collapsing onto one root.
    const int max_sweeps = 500;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double moved = 0.0;
        for (std::size_t i = 0; i < k; ++i) {
            D1Value v = d1_recurrence_eval(abc, lam[i]);
            if (v.value == Complex(0.0)) continue;
            if (v.derivative == Complex(0.0)) continue;
            const Complex newton = v.value / v.derivative;
            Complex repulsion = 0.0;
            for (std::size_t j = 0; j < k; ++j) {
                if (j == i) continue;
                const Complex diff = lam[i] - lam[j];
                if (diff != Complex(0.0)) repulsion += 1.0 / diff;
            }
            const Complex den = 1.0 - newton * repulsion;
            const Complex step = (den == Complex(0.0)) ? newton : newton / den;
            lam[i] -= step;
            moved = std::max(moved, std::abs(step) / (1.0 + std::abs(lam[i])));
        }
        if (moved < 1e-14) break;
    }
    // Real-axis snap: conjugate dust below the sweep tolerance is roundoff.
    for (Complex& z : lam)
        if (std::fabs(z.imag()) <= 1e-13 * (1.0 + std::abs(z))) z = Complex(z.real(), 0.0);
    return lam;
}

StabilityReport stability_verdict(const ComplexList& roots, double theta) {
    if (theta != 1.0 && theta != 0.5)
        throw ValidationError("theta must be 1 or 0.5");
    StabilityReport rep;
    rep.theta = theta;
    rep.roots = roots;
    rep.n_space = static_cast<int>(roots.size()) + 1;
    if (roots.empty()) {
        rep.stable = false;
        rep.detail = "no roots to certify";
        return rep;
    }
    double min_re = roots[0].real(), max_mod = 0.0;
    for (const Complex& r : roots) {
        min_re = std::min(min_re, r.real());
        max_mod = std::max(max_mod, std::abs(r));
    }
    rep.min_real_part = min_re;
    rep.amplification_moduli.reserve(roots.size());
    double rho = 0.0;
    for (const Complex& lambda : roots) {
        double mod;
        if (theta == 1.0) {
            mod = 1.0 / std::abs(1.0 + lambda);
        } else {
            const Complex half = 0.5 * lambda;
            mod = std::abs((1.0 - half) / (1.0 + half));
        }
        rep.amplification_moduli.push_back(mod);
        rho = std::max(rho, mod);
    }
    rep.spectral_radius = rho;
    const double tol = 1e-9 * (1.0 + max_mod);
    rep.stable = (min_re > tol) && (rho < 1.0);
    if (!rep.stable) {
        if (!(min_re > tol))
            rep.detail = "a root has non-positive real part: min Re = " + std::to_string(min_re);
        else
            rep.detail = "amplification modulus reached " + std::to_string(rho);
    }
    return rep;
}

StabilityReport analyze_stability(const StencilCoefficients& st, double theta) {
    const LambdaAffineTriple abc = lambda_affine_coeffs(st);
    const CharpolyPair cp = charpoly_D1(abc);
    StabilityReport rep = stability_verdict(charpoly_roots(abc), theta);
    rep.n_space = st.n_space();
    rep.degree_deficient = cp.d1.degree() < st.n_space() - 1;
    if (rep.degree_deficient && rep.detail.empty())
        rep.detail = "characteristic polynomial degree collapsed to " +
                     std::to_string(cp.d1.degree());

    const int order = st.n_space() - 1;
    if (order >= 1 && order <= 400) {
        SchemeMatrices sm = assemble_matrices(st, 1.0);   // X, Y only
        ComplexList eig = eigen_oracle(sm.X, sm.Y);
        rep.oracle_checked = true;
        rep.oracle_consistent = true;
        for (const Complex& root : rep.roots) {
            double best = 1e300;
            for (const Complex& ev : eig)
                best = std::min(best, std::abs(root - ev) / std::max(1e-30, std::abs(ev)));
            if (best > 1e-6) {
                rep.oracle_consistent = false;
                rep.stable = false;
                rep.detail = "root " + std::to_string(root.real()) +
                             " is not an eigenvalue of the amplification pencil "
                             "(mismatch " +
                             std::to_string(best) + ")";
                break;
            }
        }
    } else if (!rep.detail.empty()) {
        rep.detail += "; roots not cross-checked at this order";
    } else if (order > 400) {
        rep.detail = "roots not cross-checked at this order";
    }
    return rep;
}

ComplexList eigen_oracle(const TridiagonalMatrix& X, const TridiagonalMatrix& Y) {
    if (X.order() != Y.order()) throw ValidationError("eigen_oracle: order mismatch");
    if (X.order() > 1000) throw ValidationError("eigen_oracle capped at order 1000");
    DenseMatrix W = solve_columns(X, dense_from_tridiagonal(Y));
    return eigenvalues_dense(std::move(W));
}

namespace {

struct SymbolicTerm {
    int sign = 1;
    std::vector<std::string> factors;   // like "A2", sorted

    std::string body() const {
        std::string s;
        for (const auto& f : factors) s += f;
        return s;
    }
};

void symbolic_rec(int j, bool forced_a, int sign, std::vector<std::string>& factors,
                  std::vector<SymbolicTerm>& d1_terms) {
    auto descend = [&](char letter, int s) {
        factors.push_back(std::string(1, letter) + std::to_string(j));
        const int next_sign = sign * s;
        if (j == 1) {
            if (letter != 'C') {
                SymbolicTerm t;
                t.sign = next_sign;
                t.factors = factors;
                std::sort(t.factors.begin(), t.factors.end());
                d1_terms.push_back(std::move(t));
            }
        } else {
            symbolic_rec(j - 1, letter == 'C', next_sign, factors, d1_terms);
        }
        factors.pop_back();
    };
    if (forced_a) {
        descend('A', +1);
    } else {
        descend('B', -1);
        descend('C', -1);
    }
}

}  // namespace

std::string symbolic_d1(int n_space) {
    if (n_space < 2 || n_space > 8)
        throw ValidationError("symbolic_d1 supports 2 <= N <= 8");
    std::vector<SymbolicTerm> terms;
    std::vector<std::string> factors;
    symbolic_rec(n_space - 1, false, +1, factors, terms);
    std::sort(terms.begin(), terms.end(),
              [](const SymbolicTerm& a, const SymbolicTerm& b) { return a.body() < b.body(); });
    std::string out;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        if (i == 0) {
            if (terms[i].sign < 0) out += "-";
        } else {
            out += terms[i].sign < 0 ? " - " : " + ";
        }
        out += terms[i].body();
    }
    return out;
}

}  // namespace cdstab
