#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <memory>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <boost/math/interpolators/barycentric_rational.hpp>

#include "coding.hpp"
#include "errors.hpp"
#include "moebius.hpp"
#include "operator.hpp"

namespace hecke {

using RealFunction = std::function<cplx(double)>;

enum class Parity { none, even, odd };
enum class PeriodEquation { funceq, mod1, mod2, mod3, mod4 };

inline const char* to_string(Parity p) { return p == Parity::even ? "even" : (p == Parity::odd ? "odd" : "none"); }
inline const char* to_string(PeriodEquation e) {
    switch (e) {
    case PeriodEquation::funceq: return "funceq";
    case PeriodEquation::mod1: return "mod1";
    case PeriodEquation::mod2: return "mod2";
    case PeriodEquation::mod3: return "mod3";
    default: return "mod4";
    }
}
inline PeriodEquation parse_equation(const std::string& s) {
    if (s == "funceq") return PeriodEquation::funceq;
    if (s == "mod1") return PeriodEquation::mod1;
    if (s == "mod2") return PeriodEquation::mod2;
    if (s == "mod3") return PeriodEquation::mod3;
    if (s == "mod4") return PeriodEquation::mod4;
    throw ModeError("unknown equation '" + s + "'");
}

inline Element involution_Q() { return {0.0, 1.0, 1.0, 0.0, "Q"}; }
inline Element involution_S() { return {0.0, -1.0, 1.0, 0.0, "S"}; }

// tau_s(g) psi (t) = j_s(g^{-1}, t) psi(g^{-1} t) at a real point
inline cplx tau_real(const Element& g, cplx s, const RealFunction& psi, double t) {
    Element gi = g.inverse();
    cplx y = gi.apply(cplx(t));
    if (is_infinite(y)) throw DomainError("transformed point is infinite at t = " + std::to_string(t));
    return gi.j(s, cplx(t)) * psi(y.real());
}

// ---------------------------------------------------------------- samples

struct PeriodSamples {
    int q = 0;
    cplx s;
    std::vector<double> points;
    std::vector<cplx> values;
    Parity parity = Parity::none;
    RealFunction psi; // evaluator on R+
};

namespace detail {

inline std::vector<double> slow_endpoints(int q) {
    auto P = slow_partition(q);
    std::vector<double> e;
    for (int k = 1; k < q; ++k) {
        e.push_back(P.D[k].lo);
        if (!P.D[k].hi_infinite) e.push_back(P.D[k].hi);
    }
    return e;
}

// psi restricted to R+, reporting the offending point otherwise
inline RealFunction positive_only(const RealFunction& psi) {
    return [psi](double y) {
        if (!(y > 0.0) || !std::isfinite(y))
            throw DomainError("period function evaluated outside R+ at " + std::to_string(y));
        return psi(y);
    };
}

} // namespace detail

// builds samples; points must avoid branch-interval endpoints by 1e-9; parity is
// recorded only when tau_s(Q) symmetry holds on the samples to parity_tol
inline PeriodSamples make_period_samples(int q, cplx s, RealFunction psi, std::vector<double> points,
                                         double parity_tol = 1e-10) {
    PeriodSamples ps;
    ps.q = q;
    ps.s = s;
    ps.psi = detail::positive_only(psi);
    auto ends = detail::slow_endpoints(q);
    for (double t : points) {
        if (!(t > 0.0)) throw DomainError("sample point must be positive: " + std::to_string(t));
        for (double e : ends)
            if (std::abs(t - e) < 1e-9) throw DomainError("sample point " + std::to_string(t) + " is at an interval endpoint");
    }
    ps.points = std::move(points);
    double scale = 0.0, de = 0.0, dodd = 0.0;
    const Element Q = involution_Q();
    for (double t : ps.points) {
        cplx v = ps.psi(t);
        ps.values.push_back(v);
        cplx qv = tau_real(Q, s, ps.psi, t);
        scale = std::max(scale, std::abs(v));
        de = std::max(de, std::abs(v - qv));
        dodd = std::max(dodd, std::abs(v + qv));
    }
    if (scale > 0.0 && de <= parity_tol * scale) ps.parity = Parity::even;
    else if (scale > 0.0 && dodd <= parity_tol * scale) ps.parity = Parity::odd;
    return ps;
}

// psi(t) - RHS(t) for one of the slow functional equations
inline cplx slow_residual_at(int q, cplx s, const RealFunction& psi, PeriodEquation which, double t) {
    auto gen = hecke_generators<double>(q);
    const Element Q = involution_Q();
    const int m = (q + 1) / 2;
    cplx rhs = 0.0;
    auto tg = [&](int k) { return tau_real(gen.g[k], s, psi, t); };
    auto tqg = [&](int k) { return tau_real(Q * gen.g[k], s, psi, t); };
    switch (which) {
    case PeriodEquation::funceq:
        for (int k = 1; k < q; ++k) rhs += tg(k);
        break;
    case PeriodEquation::mod1:
    case PeriodEquation::mod2: {
        if (q % 2) throw DomainError("mod1/mod2 apply to even q");
        const double sg = which == PeriodEquation::mod1 ? 1.0 : -1.0;
        for (int k = m + 1; k < q; ++k) rhs += tg(k) + sg * tqg(k);
        rhs += 0.5 * tg(m) + 0.5 * sg * tqg(m);
        break;
    }
    case PeriodEquation::mod3:
    case PeriodEquation::mod4: {
        if (q % 2 == 0) throw DomainError("mod3/mod4 apply to odd q");
        const double sg = which == PeriodEquation::mod3 ? 1.0 : -1.0;
        for (int k = m; k < q; ++k) rhs += tg(k) + sg * tqg(k);
        break;
    }
    }
    return psi(t) - rhs;
}

inline double slow_residual(const PeriodSamples& ps, PeriodEquation which) {
    if (!ps.psi) throw DomainError("period samples carry no evaluator");
    double r = 0.0;
    for (double t : ps.points) r = std::max(r, std::abs(slow_residual_at(ps.q, ps.s, ps.psi, which, t)));
    return r;
}

// psi^{+-} = (psi +- tau_s(Q) psi)/2
inline RealFunction parity_part(cplx s, const RealFunction& psi, int sign) {
    const Element Q = involution_Q();
    auto p = detail::positive_only(psi);
    return [s, p, Q, sign](double t) { return 0.5 * (p(t) + double(sign) * tau_real(Q, s, p, t)); };
}

// phi = psi on R+, -tau_s(S) psi on R-
inline RealFunction odd_extension(cplx s, const RealFunction& psi) {
    const Element S = involution_S();
    auto p = detail::positive_only(psi);
    return [s, p, S](double t) -> cplx {
        if (t > 0.0) return p(t);
        if (t < 0.0) return -tau_real(S, s, p, t);
        throw DomainError("odd extension is undefined at 0");
    };
}

struct NegativeSideCheck {
    int l = 0;               // branch with g_l^{-1} t < 0
    cplx residual_phi = 0.0; // funceq residual of phi at t < 0
    cplx transported = 0.0;  // tau_s(g_l S)[funceq residual of psi](t)
    double gap() const { return std::abs(residual_phi - transported); }
};

// at t < 0 the residual of the odd extension is the g_l S transport of the residual on R+
inline NegativeSideCheck negative_side_check(int q, cplx s, const RealFunction& psi, double t) {
    if (!(t < 0.0)) throw DomainError("negative-side check needs t < 0");
    auto gen = hecke_generators<double>(q);
    NegativeSideCheck out;
    for (int l = 1; l < q; ++l) {
        auto gi = gen.g[l].inverse();
        cplx y = gi.apply(cplx(t));
        if (!is_infinite(y) && y.real() < 0.0) out.l = l;
    }
    if (!out.l) throw DomainError("no branch maps t = " + std::to_string(t) + " to R-");
    auto phi = odd_extension(s, psi);
    out.residual_phi = slow_residual_at(q, s, phi, PeriodEquation::funceq, t);
    RealFunction res = [&](double x) { return slow_residual_at(q, s, psi, PeriodEquation::funceq, x); };
    out.transported = tau_real(gen.g[out.l] * involution_S(), s, res, t);
    return out;
}

// ---------------------------------------------------------------- asymptotics

struct AsymptoticFit {
    cplx C0, C1, D0, D1;
    double mismatch0 = 0.0; // |C0 + D0|
    double mismatch1 = 0.0; // |C1 - D1|
};

namespace detail {

inline Eigen::VectorXcd poly_fit(const std::vector<double>& x, const std::vector<cplx>& y, int deg) {
    Eigen::MatrixXcd V(x.size(), deg + 1);
    Eigen::VectorXcd b(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        double p = 1.0;
        for (int k = 0; k <= deg; ++k) {
            V(Eigen::Index(i), k) = p;
            p *= x[i];
        }
        b(Eigen::Index(i)) = y[i];
    }
    return V.colPivHouseholderQr().solve(b);
}

} // namespace detail

// least squares on log-spaced samples t in [lo, hi] near 0 and 1/t in [lo, hi] near infinity
inline AsymptoticFit fit_asymptotics(cplx s, const RealFunction& psi, double lo = 1e-4, double hi = 1e-2,
                                     int samples = 24, int degree = 3) {
    std::vector<double> x;
    for (int i = 0; i < samples; ++i) x.push_back(lo * std::pow(hi / lo, double(i) / (samples - 1)));
    std::vector<cplx> y0, y1;
    for (double t : x) y0.push_back(psi(t));
    for (double u : x) {
        double t = 1.0 / u;
        y1.push_back(std::exp(2.0 * s * std::log(t)) * psi(t));
    }
    auto c = detail::poly_fit(x, y0, degree);
    auto d = detail::poly_fit(x, y1, degree);
    AsymptoticFit f;
    f.C0 = c(0);
    f.C1 = c(1);
    f.D0 = d(0);
    f.D1 = d(1);
    f.mismatch0 = std::abs(f.C0 + f.D0);
    f.mismatch1 = std::abs(f.C1 - f.D1);
    return f;
}

// ---------------------------------------------------------------- eigenfunctions

struct NullVector {
    Eigen::VectorXcd v;
    double sigma_min = 0.0;
    double sigma_next = 0.0;
};

// right singular vector of the smallest singular value of B
inline NullVector null_vector(const Eigen::MatrixXcd& B) {
    if (B.rows() == 0) throw DomainError("empty matrix");
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(B, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const Eigen::Index n = sv.size();
    NullVector out;
    out.v = svd.matrixV().col(n - 1);
    out.sigma_min = sv(n - 1);
    out.sigma_next = n > 1 ? sv(n - 2) : std::numeric_limits<double>::infinity();
    return out;
}

struct FastEigenfunction {
    int q = 0;
    cplx s;
    Symmetry symmetry = Symmetry::full;
    PlusMinusForm form = PlusMinusForm::automatic;
    int M = 0;
    DiskSystem disks;
    std::vector<ComponentLayout> layout;
    Eigen::VectorXcd coeffs;
    double residual = 0.0;
    double sigma_min = 0.0, sigma_ratio = 0.0;
    bool multiplicity_warning = false;
    DecayFit decay;
    double determination_residual = std::numeric_limits<double>::quiet_NaN();
    // operator at s; when present, values are taken as (L f)(z), which only needs the
    // coefficients through the smoothing branches
    std::shared_ptr<const TransferOperator> op;

    const ComponentLayout* block(int comp) const {
        for (const auto& c : layout)
            if (c.comp == comp) return &c;
        return nullptr;
    }

    // Taylor series of one stored component at z
    cplx component(int comp, cplx z) const {
        const ComponentLayout* c = block(comp);
        if (!c) throw DomainError(std::string("component ") + component_name(comp) + " is not stored");
        const Disk& D = disks.disk(comp);
        if (!D.contains(z)) throw DomainError("point outside the disk of " + std::string(component_name(comp)));
        cplx e = (z - D.center) / D.radius;
        cplx acc = 0.0;
        for (std::size_t i = 0; i < c->degrees.size(); ++i)
            acc += coeffs(c->offset + Eigen::Index(i)) * std::pow(e, c->degrees[i]);
        return acc;
    }

    double epsilon() const { return symmetry == Symmetry::minus ? -1.0 : 1.0; }

    // truncated Taylor series; on E_1 uses f_1(z) = eps f_{q-1}(-z) for the symmetric layouts
    cplx series_value(int comp, cplx z) const {
        if (comp == kE1 && symmetry != Symmetry::full) return epsilon() * component(kEq, -z);
        return component(comp, z);
    }

    cplx value(int comp, cplx z) const {
        if (!op) return series_value(comp, z);
        if (comp == kE1 && symmetry != Symmetry::full) return epsilon() * op->apply(symmetry, layout, coeffs, kEq, -z);
        return op->apply(symmetry, layout, coeffs, comp, z);
    }

    // which component covers x in (-1, 1)
    int component_at(double x) const {
        const double e = (disks.lambda - 1.0) / (disks.lambda + 1.0);
        if (!(x > -1.0 && x < 1.0)) throw DomainError("fast coordinate must lie in (-1, 1)");
        if (disks.middle_active) {
            if (x > e) return kE1;
            if (x < -e) return kEq;
            return kEr;
        }
        return x >= 0.0 ? kE1 : kEq;
    }

    cplx at(double x) const { return value(component_at(x), cplx(x)); }
    cplx series_at(double x) const { return series_value(component_at(x), cplx(x)); }
};

inline std::vector<double> coefficient_profile(const FastEigenfunction& fe) {
    std::vector<double> prof(std::size_t(fe.M + 1), 0.0);
    for (const auto& c : fe.layout)
        for (std::size_t i = 0; i < c.degrees.size(); ++i)
            prof[std::size_t(c.degrees[i])] =
                std::max(prof[std::size_t(c.degrees[i])], std::abs(fe.coeffs(c.offset + Eigen::Index(i))));
    return prof;
}

// (L f)(z) on one component of the fast picture
inline cplx apply_operator(const TransferOperator& op, const FastEigenfunction& fe, int comp, cplx z) {
    if (comp == kE1 && fe.symmetry != Symmetry::full)
        return fe.epsilon() * op.apply(fe.symmetry, fe.layout, fe.coeffs, kEq, -z);
    return op.apply(fe.symmetry, fe.layout, fe.coeffs, comp, z);
}

// points of E_r and E_{q-1} within `inner` of the E_r radius; the truncated series lose
// accuracy towards the rim of E_r, which is also the edge of the overlap
inline std::vector<cplx> overlap_points(const DiskSystem& ds, int count = 24, double inner = 0.4) {
    std::vector<cplx> pts;
    const double R = inner * ds.Er.radius;
    for (int i = 0; i < count; ++i) {
        double x = -R + 2.0 * R * (i + 0.5) / count;
        for (double y : {0.0, 0.1, -0.1}) {
            cplx z(x, y * R);
            if (ds.Er.contains(z, 1e-9) && ds.Eq1.contains(z, 1e-9)) pts.push_back(z);
        }
    }
    return pts;
}

// f_r = f_{q-1} + sum_{n>=1} tau_s(h_{q-1}^n) f_{q-1} on the overlap
inline double determination_residual(const TransferOperator& op, const FastEigenfunction& fe) {
    if (!fe.disks.middle_active) return std::numeric_limits<double>::quiet_NaN();
    const ComponentLayout* cq = fe.block(kEq);
    double num = 0.0, den = 0.0;
    for (cplx z : overlap_points(fe.disks)) {
        auto R = op.right_values(z);
        cplx rhs = fe.component(kEq, z);
        for (std::size_t i = 0; i < cq->degrees.size(); ++i) rhs += R.v[std::size_t(cq->degrees[i])] * fe.coeffs(cq->offset + Eigen::Index(i));
        cplx lhs = fe.component(kEr, z);
        num = std::max(num, std::abs(lhs - rhs));
        den = std::max(den, std::abs(lhs));
    }
    return den > 0 ? num / den : num;
}

inline FastEigenfunction extract_eigenfunction(int q, cplx s, Symmetry sym, int M, OperatorSettings set = {}) {
    set.M = M;
    auto opp = std::make_shared<const TransferOperator>(q, s, set);
    const TransferOperator& op = *opp;
    auto om = op.assemble(sym);
    FastEigenfunction fe;
    fe.q = q;
    fe.s = s;
    fe.symmetry = sym;
    fe.form = om.form;
    fe.M = M;
    fe.disks = op.disks();
    fe.layout = om.layout;
    Eigen::MatrixXcd B = Eigen::MatrixXcd::Identity(om.dim(), om.dim()) - om.A;
    auto nv = null_vector(B);
    // first nonvanishing coefficient of the E_{q-1} block becomes 1
    const ComponentLayout* cq = fe.block(kEq);
    const double vmax = nv.v.cwiseAbs().maxCoeff();
    cplx pivot = 0.0;
    for (std::size_t i = 0; i < cq->degrees.size() && pivot == cplx(0.0); ++i) {
        cplx c = nv.v(cq->offset + Eigen::Index(i));
        if (std::abs(c) > 1e-8 * vmax) pivot = c;
    }
    if (pivot == cplx(0.0)) throw EvaluationError("null vector vanishes on the E_q-1 block");
    fe.coeffs = nv.v / pivot;
    fe.residual = (B * fe.coeffs).norm() / fe.coeffs.norm();
    fe.sigma_min = nv.sigma_min;
    fe.sigma_ratio = nv.sigma_min > 0 ? nv.sigma_next / nv.sigma_min : std::numeric_limits<double>::infinity();
    fe.multiplicity_warning = fe.sigma_ratio < 10.0;
    fe.decay = fit_decay(coefficient_profile(fe));
    fe.determination_residual = determination_residual(op, fe);
    fe.op = opp;
    return fe;
}

// |f(x) - (L f)(x)| at a fast coordinate, f as its truncated series
inline double fast_eigen_residual(const TransferOperator& op, const FastEigenfunction& fe, double x) {
    int comp = fe.component_at(x);
    return std::abs(fe.series_value(comp, cplx(x)) - apply_operator(op, fe, comp, cplx(x)));
}

// psi(t) = j_s(Tconj, t) f(Tconj t)
inline cplx transport_to_slow(const FastEigenfunction& fe, double t) {
    if (!(t > 0.0)) throw DomainError("slow coordinate must be positive");
    auto cg = conjugated_generators<double>(fe.q);
    double x = tconj(t);
    int comp = fe.component_at(x);
    if (!fe.disks.disk(comp).contains(cplx(x))) throw DomainError("Tconj(t) is outside every disk");
    return cg.Tconj.j(fe.s, cplx(t)) * fe.value(comp, cplx(x));
}

// the fast eigen-relation pulled back to the slow coordinate t
inline double transported_eigen_residual(const TransferOperator& op, const FastEigenfunction& fe, double t) {
    auto cg = conjugated_generators<double>(fe.q);
    double x = tconj(t);
    int comp = fe.component_at(x);
    cplx jf = cg.Tconj.j(fe.s, cplx(t));
    return std::abs(jf * fe.series_value(comp, cplx(x)) - jf * apply_operator(op, fe, comp, cplx(x)));
}

// ---------------------------------------------------------------- extension

// psi on [1, 1 + (steps+1) lambda] from its values on [1, 1 + lambda], for a solution of
// mod3/mod4 (q odd) or mod1/mod2 (q even); below 1 the parity relation psi = +-tau_s(Q) psi is used
class ExtendedPeriodFunction {
public:
    ExtendedPeriodFunction(int q, cplx s, RealFunction base, int steps, Parity parity)
        : q_(q), s_(s), base_(std::move(base)), steps_(steps), parity_(parity) {
        if (q < 3) throw DomainError("q must be >= 3");
        if (steps < 0) throw DomainError("steps must be >= 0");
        if (parity == Parity::none) throw DomainError("extension needs an even or odd period function");
        gen_ = hecke_generators<double>(q);
        lambda_ = gen_.lambda;
        eps_ = parity == Parity::even ? 1.0 : -1.0;
        m_ = (q + 1) / 2;
        const Element Q = involution_Q();
        for (int k = 0; k < q; ++k) {
            ginv_.push_back(k ? gen_.g[k].inverse() : Element::identity());
            qginv_.push_back(k ? (Q * gen_.g[k]).inverse() : Element::identity());
        }
        g1qinv_ = gen_.g[1].inverse() * Q;
    }

    int q() const { return q_; }
    cplx s() const { return s_; }
    int steps() const { return steps_; }
    double lambda() const { return lambda_; }
    double upper() const { return 1.0 + (steps_ + 1) * lambda_; }
    std::size_t containment_checks() const { return checks_; }

    cplx operator()(double x) const {
        if (!(x > 0.0)) throw DomainError("extension is defined on R+ only");
        if (x < 1.0) return reflect(x, upper());
        if (x > upper() * (1.0 + 1e-15)) throw DomainError("point " + std::to_string(x) + " beyond the extended range");
        return eval(x);
    }

private:
    int level(double x) const {
        if (x <= 1.0 + lambda_) return 0;
        return std::min(steps_, int(std::ceil((x - 1.0) / lambda_ - 1e-12)) - 1);
    }

    // a point requested while computing level n must lie in the known region [1, 1 + n lambda]
    cplx known(double y, int n) const {
        ++checks_;
        const double hi = 1.0 + n * lambda_;
        if (!(y >= 1.0 - 1e-12 && y <= hi + 1e-12))
            throw ConsistencyError("extension requested " + std::to_string(y) + " outside the known region [1, " +
                                   std::to_string(hi) + "]");
        return eval(std::clamp(y, 1.0, hi));
    }

    cplx reflect(double y, double hi) const {
        // psi(y) = eps (y^-2)^s psi(1/y)
        double r = 1.0 / y;
        if (r > hi * (1.0 + 1e-15)) throw DomainError("point " + std::to_string(y) + " beyond the extended range");
        return eps_ * std::exp(-2.0 * s_ * std::log(y)) * eval(r);
    }

    cplx eval(double x) const {
        int n = level(x);
        if (n == 0) return base_(x);
        const double t = x - lambda_;
        cplx v = known(t, n);
        if (q_ % 2) {
            // psi(x) = psi(t) - eps j(g_1^-1 Q, t) psi(1/t + lambda)
            //          - sum_{k=2}^{m-1} [eps tau(Q g_k) + tau(g_k)] psi(t)
            v -= eps_ * g1qinv_.j(s_, cplx(t)) * known(1.0 / t + lambda_, n);
            for (int k = 2; k <= m_ - 1; ++k) {
                v -= eps_ * qginv_[k].j(s_, cplx(t)) * known(qginv_[k].apply(t), n);
                v -= ginv_[k].j(s_, cplx(t)) * known(ginv_[k].apply(t), n);
            }
        } else {
            // same recursion; the middle branch g_m is self-paired under Q and may land below 1
            v -= eps_ * g1qinv_.j(s_, cplx(t)) * known(1.0 / t + lambda_, n);
            for (int k = 2; k <= m_ - 1; ++k) {
                v -= eps_ * qginv_[k].j(s_, cplx(t)) * known(qginv_[k].apply(t), n);
                v -= ginv_[k].j(s_, cplx(t)) * known(ginv_[k].apply(t), n);
            }
            double y = ginv_[m_].apply(t);
            cplx jm = ginv_[m_].j(s_, cplx(t));
            v -= jm * (y >= 1.0 ? known(y, n) : reflect_known(y, n));
        }
        return v;
    }

    cplx reflect_known(double y, int n) const { return eps_ * std::exp(-2.0 * s_ * std::log(y)) * known(1.0 / y, n); }

    int q_;
    cplx s_;
    RealFunction base_;
    int steps_;
    Parity parity_;
    HeckeGenerators<double> gen_;
    double lambda_ = 1.0;
    double eps_ = 1.0;
    int m_ = 2;
    std::vector<Element> ginv_, qginv_;
    Element g1qinv_;
    mutable std::size_t checks_ = 0;
};

inline ExtendedPeriodFunction extend_from_fundamental(int q, cplx s, RealFunction base, int steps,
                                                      Parity parity = Parity::even) {
    return ExtendedPeriodFunction(q, s, std::move(base), steps, parity);
}

// smooth interpolant of tabulated complex values on a real interval
inline RealFunction tabulated_function(std::vector<double> t, std::vector<cplx> v) {
    if (t.size() != v.size() || t.size() < 4) throw DomainError("need at least 4 tabulated points");
    std::vector<std::size_t> idx(t.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return t[a] < t[b]; });
    std::vector<double> x, re, im;
    for (auto i : idx) {
        x.push_back(t[i]);
        re.push_back(v[i].real());
        im.push_back(v[i].imag());
    }
    const double lo = x.front(), hi = x.back();
    using BR = boost::math::barycentric_rational<double>;
    auto r = std::make_shared<BR>(x.begin(), x.end(), re.begin(), 3);
    auto i = std::make_shared<BR>(x.begin(), x.end(), im.begin(), 3);
    return [r, i, lo, hi](double y) {
        if (y < lo - 1e-12 || y > hi + 1e-12)
            throw DomainError("tabulated function evaluated at " + std::to_string(y) + " outside its range");
        return cplx((*r)(y), (*i)(y));
    };
}

} // namespace hecke
