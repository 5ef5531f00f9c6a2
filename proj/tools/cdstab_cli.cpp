// cdstab: solve 1D variable-coefficient convection-diffusion equations with
// the fourth-order compact scheme and certify stability / conditioning of
// the fully discrete system.
//
// Exit codes: 0 success, 2 configuration error, 3 numerical failure,
// 4 stability not certified (stability subcommand only).

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "cdstab/charpoly.hpp"
#include "cdstab/constantcase.hpp"
#include "cdstab/demo.hpp"
#include "cdstab/parallel.hpp"
#include "cdstab/report_io.hpp"
#include "cdstab/timestepper.hpp"

using namespace cdstab;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitNotCertified = 4;

struct Options {
    std::string a_expr = "z+1";
    std::string b_expr = "(z+1)^2";
    std::string k_expr = "0";
    std::string h1_expr = "0";
    std::string h2_expr = "0";
    double zl = 0.0, zr = 1.0;
    double horizon = 1.0;
    bool horizon_set = false;
    int n_space = 8;
    int n_time = 0;
    double dv = 0.0;
    double theta = 1.0;
    int table = 0;            // 0 = all
    std::string output;       // empty = stdout
    std::string format;       // csv | json | text; per-command default when empty
    std::string config_path;
    int threads = 0;
};

// flat key=value config file; unknown keys are errors, flags override file
void apply_config_file(Options& o, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open config file '" + path + "'");
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ValidationError(path + ":" + std::to_string(lineno) + ": expected key=value");
        const std::string key = line.substr(0, eq);
        const std::string value = line.substr(eq + 1);
        try {
            if (key == "a-expr") o.a_expr = value;
            else if (key == "b-expr") o.b_expr = value;
            else if (key == "k-expr") o.k_expr = value;
            else if (key == "h1-expr") o.h1_expr = value;
            else if (key == "h2-expr") o.h2_expr = value;
            else if (key == "zl") o.zl = std::stod(value);
            else if (key == "zr") o.zr = std::stod(value);
            else if (key == "T") { o.horizon = std::stod(value); o.horizon_set = true; }
            else if (key == "N") o.n_space = std::stoi(value);
            else if (key == "M") o.n_time = std::stoi(value);
            else if (key == "dv") o.dv = std::stod(value);
            else if (key == "theta") o.theta = std::stod(value);
            else if (key == "table") o.table = std::stoi(value);
            else if (key == "output") o.output = value;
            else if (key == "format") o.format = value;
            else if (key == "threads") o.threads = std::stoi(value);
            else
                throw ValidationError(path + ":" + std::to_string(lineno) + ": unknown key '" +
                                      key + "'");
        } catch (const std::invalid_argument&) {
            throw ValidationError(path + ":" + std::to_string(lineno) +
                                  ": malformed value for '" + key + "'");
        }
    }
}

ProblemSpec build_problem(const Options& o) {
    ProblemSpec spec;
    try {
        spec.a = expr::Expression::parse(o.a_expr);
        spec.b = expr::Expression::parse(o.b_expr);
        spec.k = expr::Expression::parse(o.k_expr);
        spec.h1 = expr::Expression::parse(o.h1_expr, "v");
        spec.h2 = expr::Expression::parse(o.h2_expr, "v");
    } catch (const ParseError& e) {
        throw ValidationError(std::string("expression error: ") + e.what());
    }
    spec.z_left = o.zl;
    spec.z_right = o.zr;
    spec.horizon = o.horizon;
    return spec;
}

// dv may come directly or via M and T; both must agree when both are given
double resolve_dv(const Options& o) {
    if (o.dv > 0.0 && o.n_time > 0 && o.horizon_set) {
        const double implied = o.horizon / o.n_time;
        if (std::fabs(implied - o.dv) > 1e-12 * o.dv)
            throw ValidationError("inconsistent time step: --dv gives " + format_full(o.dv) +
                                  " but T/M gives " + format_full(implied));
        return o.dv;
    }
    if (o.dv > 0.0) return o.dv;
    if (o.n_time > 0) return o.horizon / o.n_time;
    throw ValidationError("specify the time step via --dv or via --M (with --T)");
}

int resolve_m(const Options& o, double dv) {
    if (o.n_time > 0) return o.n_time;
    const double m_real = o.horizon / dv;
    const int m = static_cast<int>(std::llround(m_real));
    if (m < 1 || std::fabs(m - m_real) > 1e-9 * m_real)
        throw ValidationError("T/dv = " + format_full(m_real) + " is not a whole number of steps");
    return m;
}

std::string default_format(const std::string& command) {
    if (command == "solve" || command == "tables" || command == "condition") return "csv";
    return "text";
}

void emit(const Options& o, const std::string& payload) {
    if (o.output.empty()) {
        std::fputs(payload.c_str(), stdout);
        return;
    }
    std::ofstream out(o.output, std::ios::binary);
    if (!out) throw ValidationError("cannot open output file '" + o.output + "'");
    out << payload;
}

int run_solve(const Options& o) {
    ProblemSpec spec = build_problem(o);
    const double dv = resolve_dv(o);
    const int m = resolve_m(o, dv);
    GridSpec grid = GridSpec::make(spec, o.n_space, m, o.theta);
    const SolutionHistory hist = solve_ibvp(spec, grid);

    const std::string fmt = o.format.empty() ? default_format("solve") : o.format;
    std::ostringstream out;
    if (fmt == "csv") {
        out << "z,u\n";
        const auto& U = hist.final_level();
        out << format_full(spec.z_left) << "," << format_full(spec.h1(grid.time(m))) << "\n";
        for (int i = 1; i < o.n_space; ++i)
            out << format_full(grid.z(i, spec)) << "," << format_full(U[i - 1]) << "\n";
        out << format_full(spec.z_right) << "," << format_full(spec.h2(grid.time(m))) << "\n";
    } else if (fmt == "json") {
        out << "{\n  \"z\": [";
        for (int i = 0; i <= o.n_space; ++i)
            out << (i ? ", " : "") << format_full(grid.z(i, spec));
        out << "],\n  \"u\": [";
        out << format_full(spec.h1(grid.time(m)));
        for (int i = 1; i < o.n_space; ++i) out << ", " << format_full(hist.final_level()[i - 1]);
        out << ", " << format_full(spec.h2(grid.time(m)));
        out << "]\n}\n";
    } else {
        out << "solution at v = " << format_full(grid.time(m)) << "\n";
        for (int i = 1; i < o.n_space; ++i)
            out << "  z = " << format_fixed(grid.z(i, spec), 6)
                << "  u = " << format_full(hist.final_level()[i - 1]) << "\n";
    }
    emit(o, out.str());
    return kExitOk;
}

int run_stability(const Options& o) {
    ProblemSpec spec = build_problem(o);
    const double dv = resolve_dv(o);
    GridSpec grid = GridSpec::make_with_dv(spec, o.n_space, dv, o.theta);
    StencilCoefficients st = stencil_from_samples(sample_coefficients(spec, grid), grid);
    if (!st.diagonally_dominant)
        std::fprintf(stderr,
                     "warning: X is not diagonally dominant at this resolution; "
                     "refine dz before trusting the solve path\n");
    const StabilityReport rep = analyze_stability(st, o.theta);

    const std::string fmt = o.format.empty() ? default_format("stability") : o.format;
    std::ostringstream out;
    if (fmt == "json") {
        out << to_json(rep) << "\n";
    } else if (fmt == "csv") {
        out << "re,im,amplification\n";
        for (std::size_t i = 0; i < rep.roots.size(); ++i)
            out << format_full(rep.roots[i].real()) << "," << format_full(rep.roots[i].imag())
                << "," << format_full(rep.amplification_moduli[i]) << "\n";
    } else {
        if (rep.n_space <= 8)
            out << "characteristic polynomial: " << symbolic_d1(rep.n_space) << "\n";
        out << "roots of the characteristic polynomial (N = " << rep.n_space
            << ", theta = " << format_full(rep.theta) << "):\n";
        for (const Complex& r : rep.roots) {
            out << "  " << format_fixed(r.real(), 4);
            if (r.imag() != 0.0)
                out << (r.imag() >= 0 ? " + " : " - ") << format_fixed(std::fabs(r.imag()), 4)
                    << "i";
            out << "\n";
        }
        out << "min real part: " << format_fixed(rep.min_real_part, 4) << "\n";
        out << "spectral radius of the amplification matrix: "
            << format_fixed(rep.spectral_radius, 6) << "\n";
        if (rep.oracle_checked)
            out << "eigenvalue cross-check: "
                << (rep.oracle_consistent ? "consistent" : "INCONSISTENT") << "\n";
        if (!rep.stable || rep.degree_deficient)
            if (!rep.detail.empty()) out << "note: " << rep.detail << "\n";
        out << (rep.stable ? "STABLE" : "NOT CERTIFIED") << "\n";
    }
    emit(o, out.str());
    return rep.stable ? kExitOk : kExitNotCertified;
}

int run_condition(const Options& o) {
    ProblemSpec spec = build_problem(o);
    const double dv = resolve_dv(o);
    GridSpec grid = GridSpec::make_with_dv(spec, o.n_space, dv, o.theta);
    StencilCoefficients st = stencil_from_samples(sample_coefficients(spec, grid), grid);
    const ConditionReport rep = condition_report(st, o.theta);

    const std::string fmt = o.format.empty() ? default_format("condition") : o.format;
    std::ostringstream out;
    if (fmt == "json") {
        out << to_json(rep) << "\n";
    } else if (fmt == "csv") {
        out << "N,xinv_bound,xinv_exact,y_inf,y_one,y2_bound,y2_exact,kappa_bound,kappa_exact\n";
        out << o.n_space << "," << format_full(rep.norm.xinv_bound) << ","
            << format_full(rep.norm.xinv_exact) << "," << format_full(rep.norm.y_inf) << ","
            << format_full(rep.norm.y_one) << "," << format_full(rep.norm.y2_bound) << ","
            << format_full(rep.norm.y2_exact) << "," << format_full(rep.kappa_bound) << ","
            << format_full(rep.kappa_exact) << "\n";
    } else {
        out << "||X^-1||_2 <= " << format_mantissa(rep.norm.xinv_bound) << "  (exact "
            << format_mantissa(rep.norm.xinv_exact) << ")\n";
        out << "||Y||_2   <= " << format_fixed(rep.norm.y2_bound, 2) << "  (exact "
            << format_fixed(rep.norm.y2_exact, 2) << ")\n";
        out << "kappa(I+W) <= " << format_fixed(rep.kappa_bound, 2) << "  (exact "
            << format_fixed(rep.kappa_exact, 2) << ")\n";
    }
    emit(o, out.str());
    return kExitOk;
}

int run_tables(const Options& o) {
    const ProblemSpec spec = demo_problem();
    std::ostringstream out;
    const std::string fmt = o.format.empty() ? default_format("tables") : o.format;
    if (fmt != "csv" && fmt != "text")
        throw ValidationError("tables emits csv or text, not '" + fmt + "'");
    const bool csv = fmt == "csv";

    if (o.table == 0 || o.table == 1) {
        if (csv)
            out << "table,N,root\n";
        else
            out << "roots of the characteristic polynomial, dv = 0.1\n";
        for (const RootTableRow& row : root_table(spec, 2, 8, 0.1))
            for (double r : row.roots) {
                if (csv)
                    out << "1," << row.n_space << "," << format_fixed(r, 4) << "\n";
                else
                    out << "  N=" << row.n_space << "  " << format_fixed(r, 4) << "\n";
            }
    }
    if (o.table == 0 || o.table == 2 || o.table == 3) {
        const std::vector<NormTableRow> rows = norm_table(spec);
        if (o.table == 0 || o.table == 2) {
            if (csv)
                out << "table,N,M,xinv_bound,xinv_exact\n";
            else
                out << "bounds on ||X^-1||_2\n";
            for (const NormTableRow& row : rows) {
                if (csv)
                    out << "2," << row.n_space << "," << row.n_time << ","
                        << format_mantissa(row.norm.xinv_bound) << ","
                        << format_mantissa(row.norm.xinv_exact) << "\n";
                else
                    out << "  N=" << row.n_space << " M=" << row.n_time << "  "
                        << format_mantissa(row.norm.xinv_bound) << "  "
                        << format_mantissa(row.norm.xinv_exact) << "\n";
            }
        }
        if (o.table == 0 || o.table == 3) {
            if (csv)
                out << "table,N,y_inf,y_one,y2_bound,y2_exact\n";
            else
                out << "bounds on ||Y||_2\n";
            for (const NormTableRow& row : rows) {
                if (csv)
                    out << "3," << row.n_space << "," << format_fixed(row.norm.y_inf, 2) << ","
                        << format_fixed(row.norm.y_one, 2) << ","
                        << format_fixed(row.norm.y2_bound, 2) << ","
                        << format_fixed(row.norm.y2_exact, 2) << "\n";
                else
                    out << "  N=" << row.n_space << "  " << format_fixed(row.norm.y_inf, 2)
                        << "  " << format_fixed(row.norm.y_one, 2) << "  "
                        << format_fixed(row.norm.y2_bound, 2) << "  "
                        << format_fixed(row.norm.y2_exact, 2) << "\n";
            }
        }
    }
    if (o.table == 0 || o.table == 4) {
        if (csv)
            out << "table,N,M,xinv_bound,y2_bound,kappa_bound,kappa_exact\n";
        else
            out << "condition number of I+W\n";
        for (const ConditionTableRow& row : condition_table(spec, 1.0)) {
            if (csv)
                out << "4," << row.n_space << "," << row.n_time << ","
                    << format_mantissa(row.report.norm.xinv_bound) << ","
                    << format_fixed(row.report.norm.y2_bound, 2) << ","
                    << format_fixed(row.report.kappa_bound, 2) << ","
                    << format_fixed(row.report.kappa_exact, 2) << "\n";
            else
                out << "  N=" << row.n_space << " M=" << row.n_time << "  "
                    << format_fixed(row.report.kappa_bound, 2) << "  "
                    << format_fixed(row.report.kappa_exact, 2) << "\n";
        }
    }
    emit(o, out.str());
    return kExitOk;
}

int run_convergence(const Options& o) {
    std::ostringstream out;
    {
        const ProblemSpec spec = demo_problem();
        out << "temporal refinement, theta = " << format_full(o.theta)
            << ", exact solution (z+1)exp(-v), N = 64:\n";
        double prev = 0.0;
        for (int m : {8, 16, 32, 64}) {
            GridSpec grid = GridSpec::make(spec, 64, m, o.theta);
            const SolutionHistory hist = solve_ibvp(spec, grid);
            double err = 0.0;
            const double eT = std::exp(-spec.horizon);
            for (int i = 1; i < 64; ++i)
                err = std::max(err, std::fabs(hist.final_level()[i - 1] -
                                              (grid.z(i, spec) + 1.0) * eT));
            out << "  M=" << m << "  err=" << format_full(err);
            if (prev != 0.0) out << "  order=" << format_fixed(std::log2(prev / err), 3);
            out << "\n";
            prev = err;
        }
    }
    {
        const double k = 1.3, g = k * k - k;
        ProblemSpec spec;
        spec.a = expr::Expression::parse("1");
        spec.b = expr::Expression::parse("1");
        char kb[64], h1b[64], h2b[64];
        std::snprintf(kb, sizeof kb, "exp(%.17g*z)", k);
        std::snprintf(h1b, sizeof h1b, "exp(%.17g*v)", g);
        std::snprintf(h2b, sizeof h2b, "exp(%.17g+%.17g*v)", k, g);
        spec.k = expr::Expression::parse(kb);
        spec.h1 = expr::Expression::parse(h1b, "v");
        spec.h2 = expr::Expression::parse(h2b, "v");
        out << "spatial refinement, Crank-Nicolson, dv = dz^2, exact exp(1.3 z + 0.39 v):\n";
        double prev = 0.0;
        for (int n : {8, 16, 32, 64}) {
            GridSpec grid = GridSpec::make(spec, n, n * n, 0.5);
            const SolutionHistory hist = solve_ibvp(spec, grid);
            double err = 0.0;
            for (int i = 1; i < n; ++i)
                err = std::max(err, std::fabs(hist.final_level()[i - 1] -
                                              std::exp(k * grid.z(i, spec) + g)));
            out << "  N=" << n << "  err=" << format_full(err);
            if (prev != 0.0) out << "  order=" << format_fixed(std::log2(prev / err), 3);
            out << "\n";
            prev = err;
        }
    }
    emit(o, out.str());
    return kExitOk;
}

int run_constant_check(const Options& o) {
    std::ostringstream out;
    bool all_ok = true;
    for (double c : {0.1, 1.0, 10.0}) {
        for (double d : {0.01, 0.1, 1.0, 10.0, 100.0}) {
            for (int n : {4, 16, 64}) {
                ConstantProblem cp;
                cp.c = c;
                cp.dz = 1.0 / n;
                cp.dv = d * cp.dz * cp.dz;
                cp.n_space = n;
                const ConstantCertificate cert = stability_certificate(cp);
                all_ok = all_ok && cert.certified;
                out << "c=" << format_full(c) << " d=" << format_full(d) << " N=" << n << "  "
                    << (cert.certified ? "certified" : ("NOT CERTIFIED: " + cert.detail)) << "\n";
            }
        }
    }
    out << (all_ok ? "all cells certified\n" : "certificate failures present\n");
    emit(o, out.str());
    return all_ok ? kExitOk : kExitNotCertified;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"compact-scheme solver and stability/conditioning analyzer for "
                 "1D convection-diffusion equations"};
    app.require_subcommand(1);

    Options o;
    std::string command;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--a-expr", o.a_expr, "convection coefficient a(z)");
        sub->add_option("--b-expr", o.b_expr, "diffusion coefficient b(z)");
        sub->add_option("--k-expr", o.k_expr, "initial datum k(z)");
        sub->add_option("--h1-expr", o.h1_expr, "left boundary h1(v)");
        sub->add_option("--h2-expr", o.h2_expr, "right boundary h2(v)");
        sub->add_option("--zl", o.zl, "left endpoint");
        sub->add_option("--zr", o.zr, "right endpoint");
        sub->add_option("--T", o.horizon, "time horizon")
            ->each([&o](const std::string&) { o.horizon_set = true; });
        sub->add_option("--N", o.n_space, "space mesh size");
        sub->add_option("--M", o.n_time, "number of time steps");
        sub->add_option("--dv", o.dv, "time step");
        sub->add_option("--theta", o.theta, "1 = backward Euler, 0.5 = Crank-Nicolson");
        sub->add_option("--table", o.table, "table selector (1-4, tables command)");
        sub->add_option("--output", o.output, "output file (default stdout)");
        sub->add_option("--format", o.format, "csv | json | text");
        sub->add_option("--config", o.config_path, "flat key=value config file");
        sub->add_option("--threads", o.threads, "OpenMP thread count (0 = runtime default)");
    };
    for (const char* name :
         {"solve", "stability", "condition", "tables", "convergence", "constant-check"}) {
        CLI::App* sub = app.add_subcommand(name);
        add_common(sub);
        sub->callback([&command, name]() { command = name; });
    }

    CLI11_PARSE(app, argc, argv);

    try {
        if (!o.config_path.empty()) {
            // file fills only the fields the flags left at their defaults
            Options file_opts;
            apply_config_file(file_opts, o.config_path);
            Options defaults;
            auto pick = [](auto flag_value, auto default_value, auto file_value) {
                return flag_value == default_value ? file_value : flag_value;
            };
            o.a_expr = pick(o.a_expr, defaults.a_expr, file_opts.a_expr);
            o.b_expr = pick(o.b_expr, defaults.b_expr, file_opts.b_expr);
            o.k_expr = pick(o.k_expr, defaults.k_expr, file_opts.k_expr);
            o.h1_expr = pick(o.h1_expr, defaults.h1_expr, file_opts.h1_expr);
            o.h2_expr = pick(o.h2_expr, defaults.h2_expr, file_opts.h2_expr);
            o.zl = pick(o.zl, defaults.zl, file_opts.zl);
            o.zr = pick(o.zr, defaults.zr, file_opts.zr);
            if (!o.horizon_set && file_opts.horizon_set) {
                o.horizon = file_opts.horizon;
                o.horizon_set = true;
            }
            o.n_space = pick(o.n_space, defaults.n_space, file_opts.n_space);
            o.n_time = pick(o.n_time, defaults.n_time, file_opts.n_time);
            o.dv = pick(o.dv, defaults.dv, file_opts.dv);
            o.theta = pick(o.theta, defaults.theta, file_opts.theta);
            o.table = pick(o.table, defaults.table, file_opts.table);
            o.output = pick(o.output, defaults.output, file_opts.output);
            o.format = pick(o.format, defaults.format, file_opts.format);
            o.threads = pick(o.threads, defaults.threads, file_opts.threads);
        }
        if (!o.format.empty() && o.format != "csv" && o.format != "json" && o.format != "text")
            throw ValidationError("unknown format '" + o.format + "'");
        if (o.table < 0 || o.table > 4) throw ValidationError("--table must be 1..4");
        set_threads(o.threads);

        if (command == "solve") return run_solve(o);
        if (command == "stability") return run_stability(o);
        if (command == "condition") return run_condition(o);
        if (command == "tables") return run_tables(o);
        if (command == "convergence") return run_convergence(o);
        if (command == "constant-check") return run_constant_check(o);
        std::fprintf(stderr, "no command selected\n");
        return kExitConfig;
    } catch (const ValidationError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitConfig;
    } catch (const ParseError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitConfig;
    } catch (const Error& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return kExitNumeric;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return kExitNumeric;
    }
}
