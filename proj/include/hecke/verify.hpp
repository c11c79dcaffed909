#pragma once

#include <chrono>
#include <cstdint>
#include <cstring>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "coding.hpp"
#include "determinant.hpp"
#include "errors.hpp"
#include "moebius.hpp"
#include "operator.hpp"

namespace hecke {

struct InvariantResult {
    std::string name;
    bool pass = false;
    double value = 0.0;     // measured deviation or margin
    double tolerance = 0.0;
    bool informational = false; // reported, excluded from the verdict
    std::string detail;
};

struct SuiteReport {
    int q = 0;
    std::uint64_t seed = 0;
    double seconds = 0.0;
    std::vector<InvariantResult> results;
    bool ok() const {
        for (const auto& r : results)
            if (!r.pass && !r.informational) return false;
        return true;
    }
    // every row, informational ones included
    bool all_pass() const {
        for (const auto& r : results)
            if (!r.pass) return false;
        return true;
    }
};

struct SuiteSettings {
    int M = 24;
    int threads = 1;
    std::uint64_t seed = 0;
};

namespace detail {

inline double max_abs_diff(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return std::numeric_limits<double>::infinity();
    return a.rows() ? (a - b).cwiseAbs().maxCoeff() : 0.0;
}

} // namespace detail

inline SuiteReport run_invariant_suite(int q, SuiteSettings set = {}) {
    if (q < 3) throw DomainError("q must be >= 3");
    auto t0 = std::chrono::steady_clock::now();
    SuiteReport rep;
    rep.q = q;
    rep.seed = set.seed;
    auto add = [&](std::string name, bool pass, double value, double tol, std::string detail = {}, bool info = false) {
        rep.results.push_back({std::move(name), pass, value, tol, info, std::move(detail)});
    };
    // guarded: an exception in one check fails that row, the rest still run
    auto guard = [&](const std::string& name, const std::function<void()>& f) {
        try {
            f();
        } catch (const std::exception& e) {
            add(name, false, std::numeric_limits<double>::quiet_NaN(), 0.0, e.what());
        }
    };
    std::mt19937_64 rng(set.seed);

    guard("group identities", [&] {
        auto r = group_identities<double>(q);
        add("group identities", r.max_deviation() <= 1e-10, r.max_deviation(), 1e-10);
    });

    guard("slow partition endpoints", [&] {
        auto p = slow_partition(q);
        add("slow partition endpoints", p.endpoint_discrepancy <= 1e-12, p.endpoint_discrepancy, 1e-12);
    });

    guard("regular words bijection n<=2", [&] {
        bool ok = true;
        std::string why;
        for (int n = 1; n <= 2; ++n) {
            auto b = check_bijection(q, n, 3);
            if (!b.ok()) {
                ok = false;
                why = b.violations.empty() ? "" : b.violations.front();
            }
        }
        add("regular words bijection n<=2", ok, ok ? 0.0 : 1.0, 0.0, why);
    });

    guard("disk system", [&] {
        auto ds = build_disk_system(q);
        auto dr = verify_disk_system(ds);
        for (const auto& c : dr.checks) add("disk " + c.name, c.pass, c.margin, 0.0, c.pass ? "" : "margin <= 0", !c.gating);
    });

    OperatorSettings os;
    os.M = set.M;
    os.threads = set.threads;

    guard("block-J commutation", [&] {
        double worst = 0.0;
        for (cplx s : {cplx(2.0), cplx(0.5, 9.5)}) {
            auto om = TransferOperator(q, s, os).assemble(Symmetry::full);
            auto J = block_J(om);
            worst = std::max(worst, detail::max_abs_diff(om.A * J, J * om.A));
        }
        add("block-J commutation", worst <= 1e-10, worst, 1e-10);
    });

    guard("mode agreement", [&] {
        double worst = 0.0, excess = 0.0;
        for (cplx s : {cplx(1.0), cplx(2.0), cplx(1.0, 2.0)}) {
            OperatorSettings h = os, t = os;
            h.mode = Mode::hurwitz;
            t.mode = Mode::truncate;
            auto A = TransferOperator(q, s, h).assemble(Symmetry::full);
            auto B = TransferOperator(q, s, t).assemble(Symmetry::full);
            double d = detail::max_abs_diff(A.A, B.A);
            double tol = std::max(1e-10, B.tail_bound);
            worst = std::max(worst, d);
            excess = std::max(excess, d / tol);
        }
        add("mode agreement", excess <= 1.0, worst, 1e-10, "ratio to max(1e-10, tail bound) " + std::to_string(excess));
    });

    guard("Schwarz symmetry", [&] {
        std::uniform_real_distribution<double> ut(1.0, 20.0), us(0.3, 2.0);
        double worst = 0.0;
        for (int i = 0; i < 2; ++i) {
            cplx s(us(rng), ut(rng));
            cplx a = fredholm_det(TransferOperator(q, s, os).assemble(Symmetry::full));
            cplx b = fredholm_det(TransferOperator(q, std::conj(s), os).assemble(Symmetry::full));
            worst = std::max(worst, std::abs(a - std::conj(b)) / std::max(1.0, std::abs(a)));
        }
        add("Schwarz symmetry", worst <= 1e-10, worst, 1e-10);
    });

    guard("reality on the real axis", [&] {
        double worst = 0.0;
        for (double s : {0.25, 0.75, 2.0}) {
            cplx d = fredholm_det(TransferOperator(q, s, os).assemble(Symmetry::full));
            worst = std::max(worst, std::abs(d.imag()));
        }
        add("reality on the real axis", worst <= 1e-9, worst, 1e-9);
    });

    guard("determinism", [&] {
        OperatorSettings one = os, many = os;
        one.threads = 1;
        many.threads = std::max(2, os.threads);
        auto a = TransferOperator(q, cplx(0.5, 7.25), one).assemble(Symmetry::full);
        auto b = TransferOperator(q, cplx(0.5, 7.25), many).assemble(Symmetry::full);
        bool same = a.A.rows() == b.A.rows() &&
                    std::memcmp(a.A.data(), b.A.data(), sizeof(cplx) * std::size_t(a.A.size())) == 0;
        add("determinism", same, same ? 0.0 : detail::max_abs_diff(a.A, b.A), 0.0, "bitwise, 1 vs several threads");
    });

    guard("factorization", [&] {
        double worst = 0.0;
        for (cplx s : {cplx(2.0), cplx(0.5, 5.0)}) {
            TransferOperator op(q, s, os);
            cplx f = fredholm_det(op.assemble(Symmetry::full));
            cplx p = fredholm_det(op.assemble(Symmetry::plus));
            cplx m = fredholm_det(op.assemble(Symmetry::minus));
            worst = std::max(worst, std::abs(f - p * m) / std::abs(f));
        }
        add("factorization", worst <= 1e-8, worst, 1e-8);
    });

    guard("trace matrix vs words", [&] {
        cplx s = 2.0;
        auto om = TransferOperator(q, s, os).assemble(Symmetry::full);
        auto w = trace_by_words(q, 1, s);
        double d = std::abs(trace_by_matrix(om, 1) - w.value);
        double tol = w.error_bound + 1e-9;
        add("trace matrix vs words", d <= tol, d, tol);
    });

    guard("spectral radius at s=2", [&] {
        double r = spectral_radius(TransferOperator(q, 2.0, os).assemble(Symmetry::full).A);
        add("spectral radius at s=2", r < 1.0, r, 1.0);
    });

    // at large Im s the rows rise before they decay, so the fit is taken at s = 2
    guard("coefficient decay", [&] {
        auto f = entry_decay(TransferOperator(q, cplx(2.0), os).assemble(Symmetry::full));
        add("coefficient decay", f.rho < 1.0, f.rho, 1.0, "fitted rho");
    });

    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

} // namespace hecke
