#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "double_double.hpp"
#include "errors.hpp"

namespace hecke {

using cplx = std::complex<double>;

inline const cplx kComplexInfinity{std::numeric_limits<double>::infinity(), 0.0};

inline bool is_infinite(cplx z) { return std::isinf(z.real()) || std::isinf(z.imag()); }

// Log on C minus (-inf, 0]
inline cplx principal_log(cplx base) {
    if (base.imag() == 0.0 && base.real() <= 0.0)
        throw BranchError("principal branch undefined at " + std::to_string(base.real()));
    return std::log(base);
}

inline cplx principal_power(cplx base, cplx expo) { return std::exp(expo * principal_log(base)); }

// 2x2 matrix modulo sign, |det| = 1 after canonicalization
template <typename Real = double>
struct GroupElement {
    Real a{1.0}, b{0.0}, c{0.0}, d{1.0};
    std::string label;

    GroupElement() = default;
    GroupElement(Real a_, Real b_, Real c_, Real d_, std::string lab = {})
        : a(a_), b(b_), c(c_), d(d_), label(std::move(lab)) {}

    static GroupElement identity() { return {Real(1.0), Real(0.0), Real(0.0), Real(1.0), "id"}; }

    Real det() const { return a * d - b * c; }
    Real trace() const { return a + d; }

    GroupElement operator*(const GroupElement& o) const {
        std::string lab;
        if (!label.empty() || !o.label.empty()) lab = label + (label.empty() || o.label.empty() ? "" : "*") + o.label;
        return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d, lab};
    }

    // adjugate; equals the inverse in PSL and for |det| = 1
    GroupElement inverse() const {
        Real dt = det();
        GroupElement r{d, -b, -c, a, label.empty() ? "" : "(" + label + ")^-1"};
        if (to_double(dt) < 0) {
            r.a = -r.a; r.b = -r.b; r.c = -r.c; r.d = -r.d;
        }
        return r;
    }

    GroupElement pow(long n) const {
        GroupElement base = n < 0 ? inverse() : *this;
        GroupElement out = identity();
        unsigned long e = static_cast<unsigned long>(n < 0 ? -n : n);
        while (e) {
            if (e & 1UL) out = out * base;
            base = base * base;
            e >>= 1;
        }
        out.label = label.empty() ? "" : "(" + label + ")^" + std::to_string(n);
        return out;
    }

    // scale to |det| = 1 and make the first nonzero entry positive
    GroupElement canonical(double zero_tol = 1e-14) const {
        Real dt = det();
        Real sc = RealTraits<Real>::sqrt(abs_(dt));
        GroupElement r{a / sc, b / sc, c / sc, d / sc, label};
        const Real* e[4] = {&r.a, &r.b, &r.c, &r.d};
        for (auto* p : e) {
            double v = to_double(*p);
            if (std::abs(v) > zero_tol) {
                if (v < 0) {
                    r.a = -r.a; r.b = -r.b; r.c = -r.c; r.d = -r.d;
                }
                break;
            }
        }
        return r;
    }

    GroupElement<double> to_double_element() const {
        return {to_double(a), to_double(b), to_double(c), to_double(d), label};
    }

    cplx apply(cplx z) const {
        double A = to_double(a), B = to_double(b), C = to_double(c), D = to_double(d);
        if (is_infinite(z)) return C == 0.0 ? kComplexInfinity : cplx(A / C);
        cplx den = C * z + D;
        if (den == cplx(0.0)) return kComplexInfinity;
        return (A * z + B) / den;
    }
    double apply(double x) const { return apply(cplx(x)).real(); }

    cplx derivative(cplx z) const {
        cplx den = to_double(c) * z + to_double(d);
        return to_double(det()) / (den * den);
    }

    // ((cz+d)^{-2})^s on the principal branch
    cplx j(cplx s, cplx z) const {
        cplx den = to_double(c) * z + to_double(d);
        cplx base = 1.0 / (den * den);
        if (base.imag() == 0.0 && base.real() <= 0.0)
            throw BranchError("j-factor on the branch cut at z = (" + std::to_string(z.real()) + ", " +
                              std::to_string(z.imag()) + ")");
        return principal_power(base, s);
    }

private:
    static Real abs_(Real x) { return to_double(x) < 0 ? -x : x; }
};

using Element = GroupElement<double>;

template <typename Real>
double max_entry_deviation(const GroupElement<Real>& x, const GroupElement<Real>& y) {
    auto p = x.canonical(), r = y.canonical();
    double m = 0.0;
    m = std::max(m, std::abs(to_double(p.a - r.a)));
    m = std::max(m, std::abs(to_double(p.b - r.b)));
    m = std::max(m, std::abs(to_double(p.c - r.c)));
    m = std::max(m, std::abs(to_double(p.d - r.d)));
    return m;
}

template <typename Real>
bool is_identity(const GroupElement<Real>& g, double tol = 1e-10) {
    return max_entry_deviation(g, GroupElement<Real>::identity()) <= tol;
}

enum class Kind { hyperbolic, parabolic, elliptic, identity };

inline const char* to_string(Kind k) {
    switch (k) {
    case Kind::hyperbolic: return "hyperbolic";
    case Kind::parabolic: return "parabolic";
    case Kind::elliptic: return "elliptic";
    default: return "identity";
    }
}

// real point or infinity
struct ExtendedReal {
    double value = 0.0;
    bool infinite = false;
};

struct FixedPointData {
    Kind kind = Kind::identity;
    std::optional<ExtendedReal> z_star; // attractive
    std::optional<ExtendedReal> w_star; // repelling
    double multiplier = 0.0;           // signed, |multiplier| > 1
    double derivative_at_zstar = 0.0;
};

template <typename Real>
FixedPointData classify(const GroupElement<Real>& g_in, double tol = 1e-12) {
    Element g = g_in.canonical().to_double_element();
    FixedPointData out;
    double tr = g.a + g.d;
    double atr = std::abs(tr);
    if (is_identity(g, tol)) return out;
    if (std::abs(atr - 2.0) <= tol) {
        out.kind = Kind::parabolic;
        if (std::abs(g.c) <= tol) out.z_star = ExtendedReal{0.0, true};
        else out.z_star = ExtendedReal{(g.a - g.d) / (2.0 * g.c), false};
        out.w_star = out.z_star;
        return out;
    }
    if (atr < 2.0) {
        out.kind = Kind::elliptic;
        return out;
    }
    out.kind = Kind::hyperbolic;
    double disc = std::sqrt(tr * tr - 4.0);
    double mult = (atr + disc) / 2.0;
    out.multiplier = tr > 0 ? mult : -mult;
    ExtendedReal p1, p2;
    if (std::abs(g.c) <= tol * std::max(1.0, std::abs(g.a) + std::abs(g.d))) {
        // fixed points b/(d-a) and infinity; g(z) = (a/d) z + b/d near the finite one
        p1 = ExtendedReal{g.b / (g.d - g.a), false};
        p2 = ExtendedReal{0.0, true};
        if (std::abs(g.a / g.d) < 1.0) {
            out.z_star = p1; out.w_star = p2;
        } else {
            out.z_star = p2; out.w_star = p1;
        }
    } else {
        // c z^2 + (d - a) z - b = 0, stable quadratic formula
        double B = g.d - g.a;
        double sq = std::sqrt(B * B + 4.0 * g.c * g.b);
        double qq = -0.5 * (B + (B >= 0 ? sq : -sq));
        double r1 = qq / g.c;
        double r2 = -g.b / qq;
        if (qq == 0.0) r2 = r1;
        double d1 = std::abs(g.derivative(cplx(r1)));
        double d2 = std::abs(g.derivative(cplx(r2)));
        p1 = ExtendedReal{r1, false};
        p2 = ExtendedReal{r2, false};
        if (d1 < d2) {
            out.z_star = p1; out.w_star = p2;
        } else {
            out.z_star = p2; out.w_star = p1;
        }
    }
    if (out.z_star->infinite) out.derivative_at_zstar = 1.0 / (mult * mult);
    else out.derivative_at_zstar = g.derivative(cplx(out.z_star->value)).real();
    return out;
}

// lambda = 2 cos(pi/q), exact where it is a quadratic surd
template <typename Real = double>
Real hecke_lambda(int q) {
    if (q < 3) throw DomainError("q must be >= 3, got " + std::to_string(q));
    if (q == 3) return Real(1.0);
    if (q == 4) return RealTraits<Real>::sqrt(Real(2.0));
    if (q == 6) return RealTraits<Real>::sqrt(Real(3.0));
    return Real(2.0) * RealTraits<Real>::cos(RealTraits<Real>::pi() / Real(double(q)));
}

template <typename Real = double>
struct HeckeGenerators {
    int q = 0;
    Real lambda;
    GroupElement<Real> T, S, U;
    std::vector<GroupElement<Real>> g; // g[k], k = 1..q-1; g[0] = identity
};

template <typename Real = double>
HeckeGenerators<Real> hecke_generators(int q) {
    HeckeGenerators<Real> out;
    out.q = q;
    out.lambda = hecke_lambda<Real>(q);
    Real lam = out.lambda;
    Real one(1.0), zero(0.0);
    out.T = {one, lam, zero, one, "T"};
    out.S = {zero, -one, one, zero, "S"};
    out.U = out.T * out.S;
    out.U.label = "U";
    out.g.assign(q, GroupElement<Real>::identity());
    Real pi = RealTraits<Real>::pi();
    Real sq = RealTraits<Real>::sin(pi / Real(double(q)));
    for (int k = 1; k <= q - 1; ++k) {
        std::string lab = "g" + std::to_string(k);
        if (k == 1) {
            out.g[k] = {one, -lam, zero, one, lab};
        } else if (k == q - 1) {
            out.g[k] = {one, zero, -lam, one, lab};
        } else {
            Real sk = RealTraits<Real>::sin(Real(double(k)) * pi / Real(double(q))) / sq;
            Real skp = RealTraits<Real>::sin(Real(double(k + 1)) * pi / Real(double(q))) / sq;
            Real skm = RealTraits<Real>::sin(Real(double(k - 1)) * pi / Real(double(q))) / sq;
            out.g[k] = {sk, -skp, -skm, sk, lab};
        }
    }
    return out;
}

template <typename Real = double>
struct ConjugatedGenerators {
    int q = 0;
    Real lambda;
    GroupElement<Real> Tconj, J, Q;
    std::vector<GroupElement<Real>> h; // h[k] = Tconj g_k Tconj^{-1}
};

// Tconj: t -> (t - 1)/(t + 1); products taken with the unnormalized matrix and scaled by 1/2
template <typename Real = double>
GroupElement<Real> conjugate_by_T(const GroupElement<Real>& g) {
    Real one(1.0), half(0.5);
    GroupElement<Real> M{one, -one, one, one}, Mi{one, one, -one, one};
    GroupElement<Real> r = M * g * Mi;
    return {r.a * half, r.b * half, r.c * half, r.d * half, g.label.empty() ? "" : "T" + g.label + "T^-1"};
}

template <typename Real = double>
ConjugatedGenerators<Real> conjugated_generators(int q) {
    auto gen = hecke_generators<Real>(q);
    ConjugatedGenerators<Real> out;
    out.q = q;
    out.lambda = gen.lambda;
    Real r = Real(1.0) / RealTraits<Real>::sqrt(Real(2.0));
    out.Tconj = {r, -r, r, r, "Tconj"};
    out.J = {Real(-1.0), Real(0.0), Real(0.0), Real(1.0), "J"};
    out.Q = {Real(0.0), Real(1.0), Real(1.0), Real(0.0), "Q"};
    out.h.assign(q, GroupElement<Real>::identity());
    for (int k = 1; k < q; ++k) {
        out.h[k] = conjugate_by_T(gen.g[k]);
        out.h[k].label = "h" + std::to_string(k);
    }
    return out;
}

template <typename Real>
cplx apply_moebius(const GroupElement<Real>& g, cplx z) {
    return g.apply(z);
}

// tau_s(h) f (z) = j_s(h^{-1}, z) f(h^{-1} z)
template <typename Real, typename F>
cplx weight_action(const GroupElement<Real>& h, cplx s, F&& f, cplx z) {
    auto hi = h.inverse().to_double_element();
    cplx jf = hi.j(s, z);
    return jf * f(hi.apply(z));
}

struct IdentityReport {
    int q = 0;
    double s_squared = 0.0;   // |S^2 - id|
    double ts_power = 0.0;    // |(TS)^q - id|
    double q_symmetry = 0.0;  // max_k |Q g_k - g_{q-k} Q|
    double j_symmetry = 0.0;  // max_k |h_k J - J h_{q-k}|
    double max_deviation() const { return std::max(std::max(s_squared, ts_power), std::max(q_symmetry, j_symmetry)); }
};

template <typename Real = double>
IdentityReport group_identities(int q) {
    auto gen = hecke_generators<Real>(q);
    auto cg = conjugated_generators<Real>(q);
    IdentityReport rep;
    rep.q = q;
    auto id = GroupElement<Real>::identity();
    rep.s_squared = max_entry_deviation(gen.S * gen.S, id);
    rep.ts_power = max_entry_deviation((gen.T * gen.S).pow(q), id);
    for (int k = 1; k < q; ++k) {
        rep.q_symmetry = std::max(rep.q_symmetry, max_entry_deviation(cg.Q * gen.g[k], gen.g[q - k] * cg.Q));
        rep.j_symmetry = std::max(rep.j_symmetry, max_entry_deviation(cg.h[k] * cg.J, cg.J * cg.h[q - k]));
    }
    return rep;
}

} // namespace hecke
