#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "analytic.hpp"
#include "coding.hpp"
#include "errors.hpp"
#include "operator.hpp"
#include "parallel.hpp"

namespace hecke {

inline cplx trace_by_matrix(const OperatorMatrix& om, int n) {
    if (n < 1) throw DomainError("trace power must be >= 1");
    Eigen::MatrixXcd P = om.A;
    for (int i = 1; i < n; ++i) P = P * om.A;
    return P.trace();
}

inline cplx fredholm_det(const Eigen::MatrixXcd& A) {
    if (A.rows() == 0) return 1.0;
    Eigen::MatrixXcd B = Eigen::MatrixXcd::Identity(A.rows(), A.cols()) - A;
    return Eigen::PartialPivLU<Eigen::MatrixXcd>(B).determinant();
}

inline cplx fredholm_det(const OperatorMatrix& om) { return fredholm_det(om.A); }

// exp(-sum_{n<=N} tr(A^n)/n); meaningful when the spectral radius is < 1
inline cplx det_trace_log(const Eigen::MatrixXcd& A, int N) {
    Eigen::MatrixXcd P = A;
    cplx acc = 0.0;
    for (int n = 1; n <= N; ++n) {
        acc += P.trace() / double(n);
        P = P * A;
    }
    return std::exp(-acc);
}

inline double spectral_radius(const Eigen::MatrixXcd& A) {
    if (A.rows() == 0) return 0.0;
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(A, false);
    return es.eigenvalues().cwiseAbs().maxCoeff();
}

// ---------------------------------------------------------------- word sums

struct CutoffPolicy {
    int exponent_cap = 0;       // fixed cap; 0 to choose from target_bound
    double target_bound = 1e-8;
    int max_cap = 1 << 14;
    int threads = 1;
};

struct WordTrace {
    cplx value = 0.0;
    double error_bound = 0.0;
    int exponent_cap = 0;
    std::size_t terms = 0;
};

namespace detail {

struct Pattern {
    std::vector<BranchSymbol> slots; // parabolic slots carry m = 1 as a placeholder
    int parabolic = 0;
    double c_lead = 0.0;  // trace coefficient of the product of exponents
    double k0 = 1.0;      // 1/(1 - lambda_min^{-2})
};

inline std::vector<Pattern> word_patterns(int q, int n) {
    std::vector<Pattern> out;
    auto gen = hecke_generators<double>(q);
    const double lam = gen.lambda;
    for (auto& w : enumerate_regular_words(q, n, 1)) {
        Pattern p;
        p.slots = w.symbols;
        Element lead = Element::identity();
        for (const auto& b : w.symbols) {
            Element G;
            if (b.kind == SymbolKind::parabolic_left) G = {0.0, lam, 0.0, 0.0};
            else if (b.kind == SymbolKind::parabolic_right) G = {0.0, 0.0, lam, 0.0};
            else G = slow_inverse_branch(gen, b);
            if (b.parabolic()) ++p.parabolic;
            lead = G * lead;
        }
        p.c_lead = lead.trace();
        double tr = word_trace(gen, w);
        double lmin = (tr + std::sqrt(tr * tr - 4.0)) / 2.0;
        p.k0 = 1.0 / (1.0 - 1.0 / (lmin * lmin));
        out.push_back(p);
    }
    return out;
}

inline double word_tail_bound(const std::vector<Pattern>& pats, double sigma, int cap) {
    const double a = 2.0 * sigma;
    const double zeta = std::real(hurwitz_zeta(cplx(a), cplx(1.0)));
    double H = 0.0;
    for (int m = 1; m <= cap; ++m) H += std::pow(double(m), -a);
    double bound = 0.0;
    for (const auto& p : pats) {
        if (p.parabolic == 0) continue;
        if (!(p.c_lead > 0)) return std::numeric_limits<double>::infinity();
        // lambda >= trace/2
        bound += p.k0 * std::pow(0.5 * p.c_lead, -a) * (std::pow(zeta, p.parabolic) - std::pow(H, p.parabolic));
    }
    return bound;
}

} // namespace detail

// sum over regular words of length n of lambda(a)^{-2s} / (1 - lambda(a)^{-2})
inline WordTrace trace_by_words(int q, int n, cplx s, CutoffPolicy policy = {}) {
    if (!(s.real() > 0.5)) throw ModeError("word sums require Re s > 1/2");
    WordTrace out;
    auto pats = detail::word_patterns(q, n);
    int cap = policy.exponent_cap;
    if (cap <= 0) {
        cap = 16;
        while (cap < policy.max_cap && detail::word_tail_bound(pats, s.real(), cap) > policy.target_bound) cap *= 2;
    }
    out.exponent_cap = cap;
    out.error_bound = detail::word_tail_bound(pats, s.real(), cap);

    auto gen = hecke_generators<double>(q);
    const double lam = gen.lambda;
    auto parabolic = [lam](const BranchSymbol& b, int m) {
        return b.kind == SymbolKind::parabolic_left ? Element{1.0, m * lam, 0.0, 1.0} : Element{1.0, 0.0, m * lam, 1.0};
    };
    const bool real_s = s.imag() == 0.0;
    for (const auto& p : pats) {
        const int L = int(p.slots.size());
        // sum over all exponents of slots i.., given the product of slots < i
        auto sum_from = [&](int i0, const Element& start, cplx& acc, std::size_t& count) {
            std::vector<Element> prod(L + 1, Element::identity());
            prod[i0] = start;
            std::function<void(int)> rec = [&](int i) {
                if (i == L) {
                    double tr = prod[L].trace();
                    double lm = (tr + std::sqrt(tr * tr - 4.0)) / 2.0;
                    double x = 1.0 / (lm * lm);
                    acc += (real_s ? cplx(std::pow(lm, -2.0 * s.real())) : std::exp(-2.0 * s * std::log(lm))) / (1.0 - x);
                    ++count;
                    return;
                }
                const auto& b = p.slots[i];
                if (!b.parabolic()) {
                    prod[i + 1] = slow_inverse_branch(gen, b) * prod[i];
                    rec(i + 1);
                    return;
                }
                for (int m = 1; m <= cap; ++m) {
                    prod[i + 1] = parabolic(b, m) * prod[i];
                    rec(i + 1);
                }
            };
            rec(i0);
        };
        int first = 0;
        Element head = Element::identity();
        while (first < L && !p.slots[first].parabolic()) head = slow_inverse_branch(gen, p.slots[first++]) * head;
        if (first == L) {
            sum_from(L, head, out.value, out.terms);
            continue;
        }
        // split on the first parabolic exponent; partial sums are added in a fixed order
        std::vector<cplx> part(std::size_t(cap), 0.0);
        std::vector<std::size_t> cnt(std::size_t(cap), 0);
        parallel_for(std::size_t(cap), policy.threads, [&](std::size_t j) {
            sum_from(first + 1, parabolic(p.slots[first], int(j) + 1) * head, part[j], cnt[j]);
        });
        for (std::size_t j = 0; j < part.size(); ++j) {
            out.value += part[j];
            out.terms += cnt[j];
        }
    }
    return out;
}

// ---------------------------------------------------------------- zero scan

struct ZeroInfo {
    double t = 0.0;
    double residual = 0.0;
    double stability = 0.0;
    int winding = 0;
    bool validated = false;
    std::string note;
};

struct SpectralScan {
    int q = 0;
    int M = 0;
    Symmetry symmetry = Symmetry::full;
    std::vector<double> t_grid;
    std::vector<cplx> det_values;
    double median_abs = 0.0;
    std::vector<ZeroInfo> zeros;
};

using DetFunction = std::function<cplx(cplx)>;

inline double golden_min(const std::function<double(double)>& f, double a, double b, double tol) {
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - g * (b - a), d = a + g * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > tol) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

// winding number of det around the square |Re(s - s0)|, |Im(s - s0)| <= h
inline int winding_number(const DetFunction& det, cplx s0, double h, int points = 48) {
    std::vector<cplx> path;
    const int per = points / 4;
    cplx corners[4] = {s0 + cplx(h, -h), s0 + cplx(h, h), s0 + cplx(-h, h), s0 + cplx(-h, -h)};
    for (int e = 0; e < 4; ++e)
        for (int i = 0; i < per; ++i) path.push_back(corners[e] + (corners[(e + 1) % 4] - corners[e]) * (double(i) / per));
    std::vector<cplx> vals;
    for (auto z : path) vals.push_back(det(z));
    double total = 0.0;
    const std::size_t n = path.size();
    for (std::size_t i = 0; i < n; ++i) {
        cplx a = path[i], b = path[(i + 1) % n];
        cplx va = vals[i], vb = vals[(i + 1) % n];
        // subdivide edges where the argument jumps too far
        std::function<double(cplx, cplx, cplx, cplx, int)> arc = [&](cplx za, cplx zb, cplx fa, cplx fb, int depth) {
            double d = std::arg(fb / fa);
            if (std::abs(d) < M_PI / 4 || depth > 8) return d;
            cplx zm = 0.5 * (za + zb);
            cplx fm = det(zm);
            return arc(za, zm, fa, fm, depth + 1) + arc(zm, zb, fm, fb, depth + 1);
        };
        total += arc(a, b, va, vb, 0);
    }
    return int(std::lround(total / (2.0 * M_PI)));
}

inline double median(std::vector<double> v) {
    if (v.empty()) return 0.0;
    std::sort(v.begin(), v.end());
    std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

// scan det(1/2 + it) on a grid; candidates are interior local minima of |det|
// below a quarter of the median, refined by golden section and validated by winding
inline SpectralScan scan_function(const DetFunction& det, const DetFunction& det_stab, double t_min, double t_max,
                                  double t_step, double refine_tol = 1e-10, int threads = 1) {
    if (!(t_max > t_min) || !(t_step > 0)) throw DomainError("invalid scan interval");
    SpectralScan sc;
    int n = int(std::floor((t_max - t_min) / t_step + 1e-9)) + 1;
    sc.t_grid.resize(n);
    sc.det_values.resize(n);
    for (int i = 0; i < n; ++i) sc.t_grid[i] = t_min + i * t_step;
    parallel_for(std::size_t(n), threads, [&](std::size_t i) { sc.det_values[i] = det(cplx(0.5, sc.t_grid[i])); });
    std::vector<double> ab(n);
    for (int i = 0; i < n; ++i) ab[i] = std::abs(sc.det_values[i]);
    sc.median_abs = median(ab);
    const double thresh = 0.25 * sc.median_abs;
    for (int i = 1; i + 1 < n; ++i) {
        if (!(ab[i] <= ab[i - 1] && ab[i] <= ab[i + 1] && ab[i] < thresh)) continue;
        ZeroInfo z;
        auto refine = [&](const DetFunction& f) {
            return golden_min([&](double t) { return std::abs(f(cplx(0.5, t))); }, sc.t_grid[i] - t_step,
                              sc.t_grid[i] + t_step, refine_tol);
        };
        z.t = refine(det);
        z.residual = std::abs(det(cplx(0.5, z.t)));
        z.stability = std::abs(refine(det_stab) - z.t);
        double h = std::min(0.5 * t_step, 0.01);
        // keep the contour away from the real poles
        while (std::abs(z.t) - h < 2e-3 && h > 1e-6) h *= 0.5;
        try {
            z.winding = winding_number(det, cplx(0.5, z.t), h);
            z.validated = z.winding >= 1 && z.t > t_min && z.t < t_max;
            if (!z.validated) z.note = "winding number " + std::to_string(z.winding);
        } catch (const std::exception& e) {
            z.note = e.what();
        }
        sc.zeros.push_back(z);
    }
    return sc;
}

inline SpectralScan scan_zeros(int q, Symmetry sym, double t_min, double t_max, double t_step, int M,
                               double refine_tol = 1e-10, OperatorSettings set = {}) {
    set.mode = Mode::hurwitz;
    auto make = [q, sym, set](int order) {
        return [q, sym, set, order](cplx s) {
            OperatorSettings st = set;
            st.M = order;
            st.P = 0;
            st.threads = 1;
            return fredholm_det(TransferOperator(q, s, st).assemble(sym));
        };
    };
    auto sc = scan_function(make(M), make(M + 8), t_min, t_max, t_step, refine_tol, set.threads);
    sc.q = q;
    sc.M = M;
    sc.symmetry = sym;
    return sc;
}

} // namespace hecke
