#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <string>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/special_functions/bernoulli.hpp>
#include <boost/math/special_functions/factorials.hpp>

#include "errors.hpp"
#include "moebius.hpp"

namespace hecke {

struct Disk {
    cplx center{0.0};
    double radius = 1.0;
    int quadrature_points = 64;

    Disk() = default;
    Disk(cplx c, double r, int P = 64) : center(c), radius(r), quadrature_points(P) {
        if (!(r > 0)) throw DomainError("disk radius must be positive");
        if (P < 16 || P % 2) throw DomainError("quadrature points must be even and >= 16");
    }

    cplx node(int j) const {
        double th = 2.0 * M_PI * j / quadrature_points;
        return center + radius * cplx(std::cos(th), std::sin(th));
    }
    bool contains(cplx z, double margin = 0.0) const { return std::abs(z - center) < radius - margin; }
};

// P = 2(M+1) rounded up to a power of two, at least 64
inline int default_quadrature_points(int M) {
    int P = 64;
    while (P < 2 * (M + 1)) P *= 2;
    return P;
}

inline double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

namespace detail {

inline const std::vector<double>& bernoulli_over_factorial() {
    // B_{2j} / (2j)!, j = 1..20
    static const std::vector<double> table = [] {
        std::vector<double> t(21, 0.0);
        for (int j = 1; j <= 20; ++j)
            t[j] = boost::math::bernoulli_b2n<double>(j) / boost::math::factorial<double>(2 * j);
        return t;
    }();
    return table;
}

inline void check_hurwitz_args(cplx a, cplx w) {
    if (std::abs(a - 1.0) < 1e-14) throw PoleError("hurwitz zeta pole at a = 1");
    if (!(w.real() > 0)) throw DomainError("hurwitz zeta requires Re w > 0, got " + std::to_string(w.real()));
}

} // namespace detail

// zeta(a0 + m, w) for m = 0..count-1, shared powers (n+w)^{-a0-m}
inline std::vector<cplx> hurwitz_zeta_ladder(cplx a0, cplx w, int count, int K = 12) {
    std::vector<cplx> out(count, cplx(0.0));
    if (count <= 0) return out;
    double amax = 0.0;
    for (int m = 0; m < count; ++m) {
        detail::check_hurwitz_args(a0 + double(m), w);
        amax = std::max(amax, std::abs(a0 + double(m)));
    }
    const int N = std::max(20, int(std::ceil(2.0 * amax)));
    for (int n = 0; n < N; ++n) {
        cplx x = double(n) + w;
        cplx p = std::exp(-a0 * std::log(x));
        cplx inv = 1.0 / x;
        for (int m = 0; m < count; ++m) {
            out[m] += p;
            p *= inv;
        }
    }
    const auto& bf = detail::bernoulli_over_factorial();
    cplx xN = double(N) + w;
    cplx logN = std::log(xN);
    cplx invN = 1.0 / xN, inv2 = invN * invN;
    for (int m = 0; m < count; ++m) {
        cplx a = a0 + double(m);
        cplx pa = std::exp(-a * logN);
        cplx tail = pa * xN / (a - 1.0) + 0.5 * pa;
        // B_{2j}/(2j)! (a)_{2j-1} (N+w)^{-a-2j+1}
        cplx rising = a;
        cplx pw = pa * invN;
        for (int j = 1; j <= K; ++j) {
            tail += bf[j] * rising * pw;
            rising *= (a + double(2 * j - 1)) * (a + double(2 * j));
            pw *= inv2;
        }
        out[m] += tail;
    }
    return out;
}

inline cplx hurwitz_zeta(cplx a, cplx w) { return hurwitz_zeta_ladder(a, w, 1)[0]; }

// coefficient of ((z - c)/R)^k by the P-point trapezoid rule on the circle
template <typename F>
std::vector<cplx> scaled_cauchy_coefficients(F&& f, const Disk& disk, int M) {
    const int P = disk.quadrature_points;
    std::vector<cplx> vals(P);
    for (int j = 0; j < P; ++j) {
        vals[j] = f(disk.node(j));
        if (!std::isfinite(vals[j].real()) || !std::isfinite(vals[j].imag()))
            throw EvaluationError("non-finite value on the quadrature circle at node " + std::to_string(j));
    }
    std::vector<cplx> coeff(M + 1);
    for (int k = 0; k <= M; ++k) {
        cplx acc = 0.0;
        for (int j = 0; j < P; ++j) {
            double th = -2.0 * M_PI * double((long(j) * k) % P) / P;
            acc += vals[j] * cplx(std::cos(th), std::sin(th));
        }
        coeff[k] = acc / double(P);
    }
    return coeff;
}

// Taylor coefficients of (z - c)^k
template <typename F>
std::vector<cplx> cauchy_coefficients(F&& f, const Disk& disk, int M) {
    auto c = scaled_cauchy_coefficients(std::forward<F>(f), disk, M);
    double rk = 1.0;
    for (int k = 0; k <= M; ++k) {
        c[k] /= rk;
        rk *= disk.radius;
    }
    return c;
}

// 20-point Gauss-Legendre rule on [-1, 1]
struct GaussRule {
    std::vector<double> x, w;
};

inline const GaussRule& gauss_legendre_20() {
    static const GaussRule rule = [] {
        GaussRule r;
        using G = boost::math::quadrature::gauss<double, 20>;
        const auto& ab = G::abscissa();
        const auto& wt = G::weights();
        for (std::size_t i = 0; i < ab.size(); ++i) {
            if (ab[i] == 0.0) {
                r.x.push_back(0.0);
                r.w.push_back(wt[i]);
            } else {
                r.x.push_back(ab[i]);
                r.w.push_back(wt[i]);
                r.x.push_back(-ab[i]);
                r.w.push_back(wt[i]);
            }
        }
        return r;
    }();
    return rule;
}

} // namespace hecke
