// acceptance: runs the ten acceptance criteria, one PASS/FAIL line each

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <thread>

#include "hecke/hecke.hpp"

using namespace hecke;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

int threads() { return std::max(1u, std::thread::hardware_concurrency()); }

std::string fmt(const char* f, double a) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

// zero found by criterion 8, reused by criterion 9
double g_zero_t = 9.53369526;

Outcome c1_group_identities() {
    double worst = 0.0;
    for (int q = 3; q <= 12; ++q) worst = std::max(worst, group_identities<double>(q).max_deviation());
    return {worst <= 1e-10, fmt("max deviation %.2e (tol 1e-10), q = 3..12", worst)};
}

Outcome c2_coding_oracle() {
    bool ok = true;
    std::size_t words = 0;
    for (int n = 1; n <= 3; ++n) {
        auto b = check_bijection(3, n, 4);
        words += b.words;
        ok = ok && b.ok();
    }
    // pure parabolic powers are not regular; their traces are exactly 2
    auto gen = hecke_generators<double>(3);
    bool trace2 = true;
    for (int m = 1; m <= 4; ++m)
        for (auto b : {BranchSymbol::left(m), BranchSymbol::right(3, m)}) {
            Word w;
            w.symbols = {b};
            trace2 = trace2 && word_trace(gen, w) == 2.0 && !w.regular();
        }
    return {ok && trace2, std::to_string(words) + " regular words, injective and hyperbolic: " + (ok ? "yes" : "no") +
                              ", parabolic traces exactly 2: " + (trace2 ? "yes" : "no")};
}

Outcome c3_trace_identity() {
    struct Case {
        int q, n;
        double s;
    };
    bool ok = true;
    std::string d;
    for (auto c : {Case{3, 2, 2.0}, Case{4, 1, 2.0}, Case{5, 2, 1.5}}) {
        OperatorSettings set;
        set.mode = Mode::truncate;
        set.N_tail = 400;
        set.threads = threads();
        set.M = 24;
        auto om = TransferOperator(c.q, c.s, set).assemble(Symmetry::full);
        set.M = 32;
        auto om2 = TransferOperator(c.q, c.s, set).assemble(Symmetry::full);
        cplx tm = trace_by_matrix(om, c.n);
        // truncation in M estimated from the change to M = 32
        double mbound = om.tail_bound * c.n * 2.0 + std::abs(trace_by_matrix(om2, c.n) - tm);
        CutoffPolicy pol;
        pol.target_bound = 1e-7;
        pol.threads = threads();
        auto w = trace_by_words(c.q, c.n, c.s, pol);
        double bound = mbound + w.error_bound;
        double diff = std::abs(tm - w.value);
        bool pass = diff <= bound && bound <= 1e-6;
        ok = ok && pass;
        char buf[200];
        std::snprintf(buf, sizeof buf, "(%d,%d,%g): |diff| %.1e <= bound %.1e; ", c.q, c.n, c.s, diff, bound);
        d += buf;
    }
    return {ok, d};
}

Outcome c4_partition_identity() {
    double worst = 0.0;
    for (auto [q, n] : {std::pair{3, 2}, std::pair{4, 1}, std::pair{4, 2}})
        for (double s : {1.5, 2.0}) worst = std::max(worst, partition_identity_check(q, n, s, 8).discrepancy);
    return {worst <= 1e-13, fmt("max discrepancy %.2e (tol 1e-13)", worst)};
}

Outcome c5_det_vs_euler() {
    bool ok = true;
    std::string d;
    for (int q : {3, 4, 5}) {
        double L = q == 3 ? 12.0 : 10.0;
        auto spec = length_spectrum<double>(q, L);
        for (double s : {2.0, 3.0}) {
            OperatorSettings set;
            set.M = 24;
            set.threads = threads();
            cplx det = fredholm_det(TransferOperator(q, s, set).assemble(Symmetry::full));
            auto pv = euler_product(q, s, L, -1, &spec);
            double rel = std::abs(det - pv.value) / std::abs(pv.value);
            double tol = std::max(1e-3, pv.tail_bound);
            ok = ok && rel <= tol;
            char buf[160];
            std::snprintf(buf, sizeof buf, "q%d s%g %.1e; ", q, s, rel);
            d += buf;
        }
    }
    return {ok, "relative differences " + d};
}

Outcome c6_factorization() {
    double worst = 0.0;
    for (int q : {3, 4, 5, 7})
        for (cplx s : {cplx(2.0), cplx(0.5, 5.0)}) {
            OperatorSettings set;
            set.M = 24;
            set.threads = threads();
            TransferOperator op(q, s, set);
            cplx f = fredholm_det(op.assemble(Symmetry::full));
            cplx p = fredholm_det(op.assemble(Symmetry::plus));
            cplx m = fredholm_det(op.assemble(Symmetry::minus));
            worst = std::max(worst, std::abs(f - p * m) / std::abs(f));
        }
    return {worst <= 1e-8, fmt("max relative defect %.2e (tol 1e-8)", worst)};
}

Outcome c7_continuation() {
    double agree = 0.0, imag = 0.0;
    bool finite = true;
    for (int q : {3, 5}) {
        OperatorSettings h, t;
        h.M = t.M = 24;
        h.threads = t.threads = threads();
        h.mode = Mode::hurwitz;
        t.mode = Mode::truncate;
        t.N_tail = 400;
        for (double s : {0.75, 1.0, 2.0}) {
            cplx a = fredholm_det(TransferOperator(q, s, h).assemble(Symmetry::full));
            cplx b = fredholm_det(TransferOperator(q, s, t).assemble(Symmetry::full));
            agree = std::max(agree, std::abs(a - b));
        }
        for (double s : {0.25, 0.75}) {
            cplx a = fredholm_det(TransferOperator(q, s, h).assemble(Symmetry::full));
            finite = finite && std::isfinite(a.real()) && std::isfinite(a.imag());
            imag = std::max(imag, std::abs(a.imag()));
        }
    }
    double e3 = pole_probe(3).exponent, e5 = pole_probe(5).exponent;
    bool pole = std::abs(e3 + 1.0) <= 0.1 && std::abs(e5 + 1.0) <= 0.1;
    char buf[240];
    std::snprintf(buf, sizeof buf, "mode gap %.1e (tol 1e-8), |Im det| %.1e (tol 1e-9), pole exponents %.4f / %.4f", agree,
                  imag, e3, e5);
    return {agree <= 1e-8 && finite && imag <= 1e-9 && pole, buf};
}

Outcome c8_spectral_zero() {
    OperatorSettings set;
    set.threads = threads();
    auto sc = scan_zeros(3, Symmetry::minus, 9.0, 10.0, 0.02, 24, 1e-10, set);
    int validated = 0;
    const ZeroInfo* z = nullptr;
    for (const auto& x : sc.zeros)
        if (x.validated) {
            ++validated;
            z = &x;
        }
    if (validated != 1 || !z) return {false, std::to_string(validated) + " validated zeros in [9, 10]"};
    g_zero_t = z->t;
    double dist = std::abs(z->t - 9.53369526);
    bool ok = z->stability < 1e-6 && dist < 1e-3;
    char buf[240];
    std::snprintf(buf, sizeof buf, "t = %.10f, stability M24->M32 %.1e, |t - 9.53369526| = %.1e, winding %d", z->t,
                  z->stability, dist, z->winding);
    return {ok, buf};
}

void c8_informational_even_zero() {
    OperatorSettings set;
    set.threads = threads();
    auto sc = scan_zeros(3, Symmetry::plus, 13.5, 14.0, 0.02, 24, 1e-10, set);
    std::string d;
    for (const auto& z : sc.zeros)
        d += fmt("t = %.8f", z.t) + (z.validated ? " (validated) " : " (not validated) ");
    std::printf("INFO   criterion 8 extended: q=3 plus zeros in [13.5, 14]: %s\n", d.empty() ? "none" : d.c_str());
}

Outcome c9_eigenfunction() {
    const cplx s(0.5, g_zero_t);
    OperatorSettings set;
    set.threads = threads();
    auto fe = extract_eigenfunction(3, s, Symmetry::minus, 24, set);
    auto f20 = extract_eigenfunction(3, s, Symmetry::minus, 20, set);
    auto f28 = extract_eigenfunction(3, s, Symmetry::minus, 28, set);
    double diff = 0.0, scale = 0.0, inner = 0.0;
    for (int i = 0; i <= 16; ++i) {
        double x = -0.8 + 1.6 * i / 16.0;
        cplx a = f20.at(x), b = f28.at(x);
        diff = std::max(diff, std::abs(a - b));
        scale = std::max(scale, std::abs(b));
        if (std::abs(x) <= 0.5) inner = std::max(inner, std::abs(a - b));
    }
    double stab = diff / scale;
    bool ok = fe.residual <= 1e-8 && fe.decay.rho < 0.8 && stab <= 1e-7;
    char buf[320];
    std::snprintf(buf, sizeof buf,
                  "residual %.1e (tol 1e-8), rho %.3f (< 0.8), value stability M20/M28 on [-0.8, 0.8] %.1e (tol 1e-7), "
                  "on [-0.5, 0.5] %.1e",
                  fe.residual, fe.decay.rho, stab, inner / scale);
    return {ok, buf};
}

Outcome c10_invariant_suite() {
    bool gating = true, literal = true;
    std::string failed;
    for (int q = 3; q <= 7; ++q) {
        SuiteSettings set;
        set.threads = threads();
        auto rep = run_invariant_suite(q, set);
        gating = gating && rep.ok();
        literal = literal && rep.all_pass();
        for (const auto& r : rep.results)
            if (!r.pass && failed.find(r.name) == std::string::npos) failed += (failed.empty() ? "" : "; ") + r.name;
    }
    std::string d = std::string("gating invariants ") + (gating ? "pass" : "fail") + " for q = 3..7";
    if (!failed.empty()) d += "; failing: " + failed;
    return {gating && literal, d};
}

} // namespace

int main() {
    std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"group identities", c1_group_identities},
        {"coding oracle", c2_coding_oracle},
        {"trace identity", c3_trace_identity},
        {"partition identity", c4_partition_identity},
        {"determinant vs Euler product", c5_det_vs_euler},
        {"factorization", c6_factorization},
        {"meromorphic continuation", c7_continuation},
        {"spectral zero", c8_spectral_zero},
        {"eigenfunction quality", c9_eigenfunction},
        {"invariant suite", c10_invariant_suite},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("%s criterion %zu (%s): %s [%.1fs]\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                    o.detail.c_str(), sec);
        std::fflush(stdout);
        if (!o.pass) ++failures;
        if (i == 7) c8_informational_even_zero();
    }
    std::printf("%d of %zu criteria pass\n", int(criteria.size()) - failures, criteria.size());
    return failures ? 1 : 0;
}
