#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "analytic.hpp"
#include "errors.hpp"
#include "moebius.hpp"
#include "parallel.hpp"

namespace hecke {

enum class Mode { truncate, hurwitz };
enum class Symmetry { full, plus, minus };
// twisted: the J-twisted two-component form on the full E_r disk (q odd)
// parity: restriction to the J-eigenspace, E_r unknowns of one parity
enum class PlusMinusForm { automatic, twisted, parity };

inline const char* to_string(Mode m) { return m == Mode::truncate ? "truncate" : "hurwitz"; }
inline const char* to_string(Symmetry s) {
    return s == Symmetry::full ? "full" : (s == Symmetry::plus ? "plus" : "minus");
}
inline const char* to_string(PlusMinusForm f) {
    return f == PlusMinusForm::twisted ? "twisted" : (f == PlusMinusForm::parity ? "parity" : "automatic");
}
inline Mode parse_mode(const std::string& s) {
    if (s == "truncate") return Mode::truncate;
    if (s == "hurwitz") return Mode::hurwitz;
    throw ModeError("unknown mode '" + s + "'");
}
inline Symmetry parse_symmetry(const std::string& s) {
    if (s == "full") return Symmetry::full;
    if (s == "plus" || s == "+" || s == "even") return Symmetry::plus;
    if (s == "minus" || s == "-" || s == "odd") return Symmetry::minus;
    throw ModeError("unknown symmetry '" + s + "'");
}

enum Component { kE1 = 0, kEr = 1, kEq = 2 };

inline const char* component_name(int c) { return c == kE1 ? "E1" : (c == kEr ? "Er" : "Eq-1"); }

// ---------------------------------------------------------------- disks

struct DiskSystem {
    int q = 0;
    double lambda = 0.0;
    double c_param = 2.0;
    double a1 = 0, b1 = 0, ar = 0, br = 0, aq = 0, bq = 0;
    Disk E1, Er, Eq1;
    bool middle_active = false;

    const Disk& disk(int comp) const { return comp == kE1 ? E1 : (comp == kEr ? Er : Eq1); }
};

inline Disk disk_from_chord(double a, double b, int P = 64) { return Disk(cplx(0.5 * (a + b)), 0.5 * (b - a), P); }

inline DiskSystem make_disk_system(int q, double c) {
    if (!(c > 1.0)) throw DomainError("disk parameter c must be > 1");
    DiskSystem ds;
    ds.q = q;
    ds.lambda = hecke_lambda<double>(q);
    ds.c_param = c;
    const double l = ds.lambda;
    ds.a1 = -(2 * l - 1) / (2 * l + 1);
    ds.b1 = (5 * l + 1) / (5 * l - 1);
    ds.aq = -ds.b1;
    ds.bq = -ds.a1;
    ds.br = (c * l - 1) / (c * l + 1);
    ds.ar = -ds.br;
    ds.E1 = disk_from_chord(ds.a1, ds.b1);
    ds.Eq1 = disk_from_chord(ds.aq, ds.bq);
    ds.Er = disk_from_chord(ds.ar, ds.br);
    ds.middle_active = q > 3;
    return ds;
}

struct DiskCheck {
    std::string name;
    bool pass = true;
    double margin = 0.0; // positive when satisfied
    // the strict contraction bounds on the whole disks cannot hold: each parabolic
    // fixed point lies inside its disk and has derivative 1 there. They are reported
    // but do not gate the construction; the half-disk forms below gate instead.
    bool gating = true;
};

struct DiskReport {
    std::vector<DiskCheck> checks;
    bool ok() const {
        return std::all_of(checks.begin(), checks.end(), [](const DiskCheck& c) { return c.pass || !c.gating; });
    }
    bool all_literal() const {
        return std::all_of(checks.begin(), checks.end(), [](const DiskCheck& c) { return c.pass; });
    }
    std::string first_failure() const {
        for (const auto& c : checks)
            if (!c.pass && c.gating) return c.name;
        return {};
    }
};

namespace detail {

// relative margin of g(closure(src)) inside tgt, from boundary samples
inline double inclusion_margin(const Element& g, const Disk& src, const Disk& tgt, int samples) {
    if (g.c != 0.0) {
        cplx pole(-g.d / g.c);
        if (std::abs(pole - src.center) <= src.radius) return -1.0;
    }
    double m = 1.0;
    for (int j = 0; j < samples; ++j) {
        double th = 2.0 * M_PI * j / samples;
        cplx z = src.center + src.radius * cplx(std::cos(th), std::sin(th));
        m = std::min(m, (tgt.radius - std::abs(g.apply(z) - tgt.center)) / tgt.radius);
    }
    return m;
}

inline double point_margin(double x, const Disk& d) { return (d.radius - std::abs(cplx(x) - d.center)) / d.radius; }

} // namespace detail

inline DiskReport verify_disk_system(const DiskSystem& ds, int samples = 720, int nmax = 50) {
    if (samples < 8) throw DomainError("need at least 8 boundary samples");
    DiskReport rep;
    const int q = ds.q;
    auto cg = conjugated_generators<double>(q);
    const double e = (ds.lambda - 1.0) / (ds.lambda + 1.0);
    auto add = [&](const std::string& name, double margin) { rep.checks.push_back({name, margin > 0.0, margin}); };

    double m = std::min({detail::point_margin(e, ds.E1), detail::point_margin(1.0, ds.E1),
                         detail::point_margin(-1.0, ds.Eq1), detail::point_margin(-e, ds.Eq1)});
    if (ds.middle_active) m = std::min({m, detail::point_margin(-e, ds.Er), detail::point_margin(e, ds.Er)});
    add("(i) interval closures inside disks", m);

    double dev = std::abs(ds.E1.center + ds.Eq1.center) + std::abs(ds.E1.radius - ds.Eq1.radius) +
                 std::abs(ds.Er.center);
    add("(ii) J-symmetry of disks", 1e-12 - dev);

    m = 1.0;
    if (ds.middle_active)
        for (int k = 2; k <= q - 2; ++k) {
            auto hi = cg.h[k].inverse();
            for (const Disk* src : {&ds.E1, &ds.Er, &ds.Eq1})
                m = std::min(m, detail::inclusion_margin(hi, *src, ds.Er, samples));
        }
    add("(iii) hyperbolic branches into E_r", m);

    m = detail::point_margin(1.0, ds.E1);
    for (int n = 1; n <= nmax; ++n) {
        auto hi = cg.h[1].pow(-n);
        m = std::min(m, detail::inclusion_margin(hi, ds.Eq1, ds.E1, samples));
        if (ds.middle_active) m = std::min(m, detail::inclusion_margin(hi, ds.Er, ds.E1, samples));
    }
    add("(iv) left parabolic powers into E_1", m);

    m = detail::point_margin(-1.0, ds.Eq1);
    for (int n = 1; n <= nmax; ++n) {
        auto hi = cg.h[q - 1].pow(-n);
        m = std::min(m, detail::inclusion_margin(hi, ds.E1, ds.Eq1, samples));
        if (ds.middle_active) m = std::min(m, detail::inclusion_margin(hi, ds.Er, ds.Eq1, samples));
    }
    add("(v) right parabolic powers into E_q-1", m);

    auto contraction = [&](const Element& g, const Disk& d) {
        double mx = 0.0;
        for (int j = 0; j < samples; ++j) {
            double th = 2.0 * M_PI * j / samples;
            mx = std::max(mx, std::abs(g.derivative(d.center + d.radius * cplx(std::cos(th), std::sin(th)))));
        }
        return 1.0 - mx;
    };
    rep.checks.push_back({"(vi) contraction of h_1^-1 on E_1", false, 0.0, false});
    rep.checks.back().margin = contraction(cg.h[1].inverse(), ds.E1);
    rep.checks.back().pass = rep.checks.back().margin > 0.0;
    rep.checks.push_back({"(vii) contraction of h_q-1^-1 on E_q-1", false, 0.0, false});
    rep.checks.back().margin = contraction(cg.h[q - 1].inverse(), ds.Eq1);
    rep.checks.back().pass = rep.checks.back().margin > 0.0;

    // |(h_1^-1)'| <= 1 on E_1 cut by Re z <= 1, equality only at the fixed point 1;
    // sampled on the boundary of the cut region (arc plus chord)
    auto half_contraction = [&](const Element& g, const Disk& d, double sign) {
        double mx = 0.0;
        const double xc = d.center.real(), r = d.radius;
        const double half = std::sqrt(std::max(0.0, r * r - (1.0 - sign * xc) * (1.0 - sign * xc)));
        for (int j = 0; j < samples; ++j) {
            double th = 2.0 * M_PI * j / samples;
            cplx z = d.center + r * cplx(std::cos(th), std::sin(th));
            if (sign * z.real() <= 1.0) mx = std::max(mx, std::abs(g.derivative(z)));
            cplx w(sign * 1.0, half * (2.0 * j / (samples - 1.0) - 1.0));
            mx = std::max(mx, std::abs(g.derivative(w)));
        }
        return 1.0 + 1e-12 - mx;
    };
    add("(vi') contraction of h_1^-1 on E_1 with Re z <= 1", half_contraction(cg.h[1].inverse(), ds.E1, 1.0));
    add("(vii') contraction of h_q-1^-1 on E_q-1 with Re z >= -1",
        half_contraction(cg.h[q - 1].inverse(), ds.Eq1, -1.0));
    add("(viii) Re z > -1 on E_1", ds.E1.center.real() - ds.E1.radius + 1.0);
    add("(ix) Re z < 1 on E_q-1", 1.0 - (ds.Eq1.center.real() + ds.Eq1.radius));
    add("(x) |Re z| < 1 on E_r",
        ds.middle_active ? 1.0 - std::max(std::abs(ds.Er.center.real() - ds.Er.radius),
                                          std::abs(ds.Er.center.real() + ds.Er.radius))
                         : 1.0);
    return rep;
}

inline DiskSystem build_disk_system(int q, double c_init = 2.0, int samples = 720) {
    if (!(c_init > 1.0)) throw DomainError("c_init must be > 1");
    double c = c_init;
    std::string last;
    for (int step = 0; step <= 40; ++step, c *= 1.5) {
        auto ds = make_disk_system(q, c);
        auto rep = verify_disk_system(ds, samples);
        if (rep.ok()) return ds;
        last = rep.first_failure();
    }
    throw ConstructionError("no disk parameter found for q = " + std::to_string(q) + "; violated: " + last);
}

// ---------------------------------------------------------------- operator

struct OperatorSettings {
    Mode mode = Mode::hurwitz;
    int M = 24;
    int P = 0;            // quadrature points, 0 for the default
    int N_tail = 400;     // truncate mode: terms summed directly
    int em_pairs = 4;     // truncate mode: Bernoulli pairs in the tail correction
    int hurwitz_split = 0; // hurwitz mode: direct terms before the zeta tail, 0 for automatic
    double c_init = 2.0;
    PlusMinusForm form = PlusMinusForm::automatic;
    int threads = 1;
};

struct ComponentLayout {
    int comp = kEq;
    int offset = 0;
    std::vector<int> degrees;
};

struct OperatorMatrix {
    int q = 0;
    cplx s;
    int M = 0;
    Mode mode = Mode::hurwitz;
    Symmetry symmetry = Symmetry::full;
    PlusMinusForm form = PlusMinusForm::automatic;
    double c_param = 0.0;
    int N_tail = 0;
    int quadrature_points = 0;
    double tail_bound = 0.0;
    double raw_tail_bound = 0.0;
    std::vector<ComponentLayout> layout;
    Eigen::MatrixXcd A;

    Eigen::Index dim() const { return A.rows(); }
};

struct BasisValues {
    std::vector<cplx> v;
    double tail = 0.0;
};

class TransferOperator {
public:
    TransferOperator(int q, cplx s, OperatorSettings set = {}, std::optional<DiskSystem> ds = std::nullopt)
        : q_(q), s_(s), set_(set) {
        if (q < 3) throw DomainError("q must be >= 3");
        if (set_.M < 0) throw DomainError("order M must be >= 0");
        if (set_.mode == Mode::truncate) {
            if (!(s.real() > 0.51))
                throw ModeError("truncate mode requires Re s > 0.51; use hurwitz mode for Re s = " +
                                std::to_string(s.real()));
            if (set_.N_tail < 1) throw DomainError("N_tail must be >= 1");
        } else {
            double d = pole_distance(s);
            if (d < 1e-6) throw PoleError("s is within 1e-6 of the pole set {(1-k)/2}");
        }
        ds_ = ds ? *ds : build_disk_system(q, set_.c_init);
        P_ = set_.P > 0 ? set_.P : default_quadrature_points(set_.M);
        ds_.E1.quadrature_points = ds_.Er.quadrature_points = ds_.Eq1.quadrature_points = P_;
        auto cg = conjugated_generators<double>(q);
        lambda_ = cg.lambda;
        hinv_.resize(q);
        for (int k = 1; k < q; ++k) hinv_[k] = cg.h[k].inverse();
        const int M = set_.M;
        binom_.assign(M + 1, std::vector<double>(M + 1, 0.0));
        for (int l = 0; l <= M; ++l)
            for (int mm = 0; mm <= l; ++mm) binom_[l][mm] = binomial(l, mm);
        cq_ = ds_.Eq1.center.real();
        Rq_ = ds_.Eq1.radius;
        gamma_ = (-1.0 - cq_) / Rq_;
        kappa_ = 2.0 / (lambda_ * Rq_);
        if (set_.hurwitz_split > 0) N0_ = set_.hurwitz_split;
        else N0_ = std::max(4, int(std::ceil(kappa_ / (1.0 - std::abs(gamma_)))));
        if (set_.form == PlusMinusForm::automatic) form_ = q % 2 ? PlusMinusForm::twisted : PlusMinusForm::parity;
        else form_ = set_.form;
        if (form_ == PlusMinusForm::twisted && q % 2 == 0)
            throw ModeError("the twisted plus/minus form requires q odd");
        mid_ = (q + 1) / 2;
    }

    static double pole_distance(cplx s) {
        double d = 1e300;
        int kmin = std::max(0, int(std::floor(1.0 - 2.0 * s.real())) - 1);
        for (int k = kmin; k <= kmin + 3; ++k) d = std::min(d, std::abs(s - cplx((1.0 - k) / 2.0)));
        if (s.real() > 0.5) d = std::min(d, std::abs(s - 0.5));
        return d;
    }

    int q() const { return q_; }
    cplx s() const { return s_; }
    int order() const { return set_.M; }
    const DiskSystem& disks() const { return ds_; }
    const OperatorSettings& settings() const { return set_; }
    PlusMinusForm plus_minus_form() const { return form_; }
    int hurwitz_split() const { return N0_; }

    std::vector<ComponentLayout> layout(Symmetry sym) const {
        std::vector<ComponentLayout> L;
        const int M = set_.M;
        std::vector<int> all(M + 1);
        for (int l = 0; l <= M; ++l) all[l] = l;
        int off = 0;
        auto push = [&](int comp, std::vector<int> deg) {
            L.push_back({comp, off, deg});
            off += int(deg.size());
        };
        if (sym == Symmetry::full) {
            push(kE1, all);
            if (ds_.middle_active) push(kEr, all);
            push(kEq, all);
        } else {
            push(kEq, all);
            if (ds_.middle_active) {
                if (form_ == PlusMinusForm::twisted) push(kEr, all);
                else {
                    std::vector<int> par;
                    for (int l = (sym == Symmetry::plus ? 0 : 1); l <= M; l += 2) par.push_back(l);
                    push(kEr, par);
                }
            }
        }
        return L;
    }

    // R_l(z) = sum_{n>=1} tau_s(h_{q-1}^n) e_{q-1,l} (z), l = 0..M
    BasisValues right_values(cplx z) const {
        if (!((1.0 + z).real() > 0.0))
            throw DomainError("parabolic sum evaluated at Re(1+z) <= 0");
        return set_.mode == Mode::hurwitz ? right_hurwitz(z) : right_truncate(z);
    }

    // tau_s(h_k) e_{r,l} (z)
    std::vector<cplx> hyperbolic_values(int k, cplx z) const {
        const auto& g = hinv_[k];
        cplx jf = g.j(s_, z);
        cplx e = (g.apply(z) - ds_.Er.center) / ds_.Er.radius;
        std::vector<cplx> v(set_.M + 1);
        cplx p = jf;
        for (int l = 0; l <= set_.M; ++l) {
            v[l] = p;
            p *= e;
        }
        return v;
    }

    // (L e_col)(z) on the target component, for every unknown col
    BasisValues column_values(Symmetry sym, const std::vector<ComponentLayout>& lay, int target, cplx z) const {
        int dim = 0;
        for (const auto& c : lay) dim += int(c.degrees.size());
        BasisValues out;
        out.v.assign(dim, cplx(0.0));
        const int M = set_.M;
        const double eps = sym == Symmetry::minus ? -1.0 : 1.0;
        auto block = [&](int comp) -> const ComponentLayout* {
            for (const auto& c : lay)
                if (c.comp == comp) return &c;
            return nullptr;
        };
        auto put = [&](const ComponentLayout* c, const std::vector<cplx>& vals, cplx factor) {
            for (std::size_t i = 0; i < c->degrees.size(); ++i) out.v[c->offset + i] += factor * vals[c->degrees[i]];
        };
        auto mid_sum = [&](int k0, int k1, bool twist) {
            std::vector<cplx> acc(M + 1, cplx(0.0));
            for (int k = k0; k <= k1; ++k) {
                auto hv = hyperbolic_values(k, z);
                for (int l = 0; l <= M; ++l) acc[l] += (twist && (l % 2)) ? -hv[l] : hv[l];
            }
            return acc;
        };

        if (sym == Symmetry::full) {
            if (target != kE1) {
                auto r = right_values(-z);
                out.tail = std::max(out.tail, r.tail);
                for (int l = 1; l <= M; l += 2) r.v[l] = -r.v[l];
                put(block(kE1), r.v, 1.0);
            }
            if (target != kEq) {
                auto r = right_values(z);
                out.tail = std::max(out.tail, r.tail);
                put(block(kEq), r.v, 1.0);
            }
            if (ds_.middle_active) put(block(kEr), mid_sum(2, q_ - 2, false), 1.0);
            return out;
        }

        // J-twisted left sum: tau_s(h_1^n J) e_{q-1,l} (z) = R_l(-z)
        auto rm = right_values(-z);
        out.tail = rm.tail;
        put(block(kEq), rm.v, eps);
        if (target == kEr) {
            auto r = right_values(z);
            out.tail = std::max(out.tail, r.tail);
            put(block(kEq), r.v, 1.0);
        }
        if (ds_.middle_active) {
            if (form_ == PlusMinusForm::twisted) {
                auto a = mid_sum(mid_, q_ - 2, false);
                auto b = mid_sum(2, mid_ - 1, true);
                for (int l = 0; l <= M; ++l) a[l] += eps * b[l];
                put(block(kEr), a, 1.0);
            } else {
                put(block(kEr), mid_sum(2, q_ - 2, false), 1.0);
            }
        }
        return out;
    }

    OperatorMatrix assemble(Symmetry sym) const {
        OperatorMatrix om;
        om.q = q_;
        om.s = s_;
        om.M = set_.M;
        om.mode = set_.mode;
        om.symmetry = sym;
        om.form = sym == Symmetry::full ? PlusMinusForm::automatic : form_;
        om.c_param = ds_.c_param;
        om.N_tail = set_.mode == Mode::truncate ? set_.N_tail : 0;
        om.quadrature_points = P_;
        om.layout = layout(sym);
        int dim = 0;
        for (const auto& c : om.layout) dim += int(c.degrees.size());
        om.A = Eigen::MatrixXcd::Zero(dim, dim);

        const int P = P_;
        std::vector<cplx> roots(P);
        for (int j = 0; j < P; ++j) {
            double th = -2.0 * M_PI * j / P;
            roots[j] = cplx(std::cos(th), std::sin(th));
        }
        double tail = 0.0;
        for (const auto& tgt : om.layout) {
            const Disk& D = ds_.disk(tgt.comp);
            Eigen::MatrixXcd V(P, dim);
            std::vector<double> tails(P, 0.0);
            parallel_for(std::size_t(P), set_.threads, [&](std::size_t p) {
                auto cv = column_values(sym, om.layout, tgt.comp, D.node(int(p)));
                for (int c = 0; c < dim; ++c) V(Eigen::Index(p), c) = cv.v[c];
                tails[p] = cv.tail;
            });
            for (double t : tails) tail = std::max(tail, t);
            Eigen::MatrixXcd W(tgt.degrees.size(), P);
            for (std::size_t i = 0; i < tgt.degrees.size(); ++i)
                for (int p = 0; p < P; ++p)
                    W(Eigen::Index(i), p) = roots[(long(p) * tgt.degrees[i]) % P] / double(P);
            om.A.middleRows(tgt.offset, tgt.degrees.size()) = W * V;
        }
        om.tail_bound = tail;
        om.raw_tail_bound = raw_tail_bound();
        return om;
    }

    // bound on the omitted tail of the plain truncated sum, from the j-factor estimate
    double raw_tail_bound() const {
        if (set_.mode != Mode::truncate) return 0.0;
        const double sig = s_.real(), t = std::abs(s_.imag());
        double x0 = ds_.E1.center.real() - ds_.E1.radius;
        if (ds_.middle_active) x0 = std::min(x0, ds_.Er.center.real() - ds_.Er.radius);
        const double a = lambda_ * (x0 + 1.0);
        const double N = set_.N_tail;
        return std::pow(4.0, sig) * std::exp(M_PI * t) * std::pow(N * a + 2.0, 1.0 - 2.0 * sig) / (a * (2.0 * sig - 1.0));
    }

    // sum_l x_l ((z - c)/R)^l over the unknowns of one component
    cplx evaluate(const ComponentLayout& c, const Eigen::VectorXcd& x, cplx z) const {
        const Disk& D = ds_.disk(c.comp);
        cplx e = (z - D.center) / D.radius;
        cplx acc = 0.0;
        for (std::size_t i = 0; i < c.degrees.size(); ++i) acc += x(c.offset + Eigen::Index(i)) * std::pow(e, c.degrees[i]);
        return acc;
    }

    // (L f)(z) on a target component, f given by coefficients on the layout
    cplx apply(Symmetry sym, const std::vector<ComponentLayout>& lay, const Eigen::VectorXcd& x, int target, cplx z) const {
        auto cv = column_values(sym, lay, target, z);
        cplx acc = 0.0;
        for (Eigen::Index i = 0; i < x.size(); ++i) acc += cv.v[std::size_t(i)] * x(i);
        return acc;
    }

private:
    BasisValues right_hurwitz(cplx z) const {
        const int M = set_.M;
        BasisValues out;
        out.v.assign(M + 1, cplx(0.0));
        const cplx u = 2.0 / (lambda_ * (1.0 + z));
        const cplx two_s = 2.0 * s_;
        for (int n = 1; n < N0_; ++n) {
            cplx jf = std::exp(-two_s * std::log(1.0 + double(n) / u));
            cplx w = -1.0 + (2.0 / lambda_) / (double(n) + u);
            cplx e = (w - cq_) / Rq_;
            cplx p = jf;
            for (int l = 0; l <= M; ++l) {
                out.v[l] += p;
                p *= e;
            }
        }
        auto zl = hurwitz_zeta_ladder(two_s, double(N0_) + u, M + 1);
        const cplx pre = std::exp(two_s * std::log(u));
        std::vector<cplx> km(M + 1), gm(M + 1);
        km[0] = gm[0] = 1.0;
        for (int i = 1; i <= M; ++i) {
            km[i] = km[i - 1] * kappa_;
            gm[i] = gm[i - 1] * gamma_;
        }
        for (int m = 0; m <= M; ++m) zl[m] *= km[m];
        for (int l = 0; l <= M; ++l) {
            cplx acc = 0.0;
            for (int m = 0; m <= l; ++m) acc += binom_[l][m] * gm[l - m] * zl[m];
            out.v[l] += pre * acc;
        }
        return out;
    }

    // summand F(x) of the parabolic sum, analytic in x
    void summand(cplx x, cplx u, cplx* out) const {
        cplx jf = std::exp(-2.0 * s_ * std::log(1.0 + x / u));
        cplx w = -1.0 + (2.0 / lambda_) / (x + u);
        cplx e = (w - cq_) / Rq_;
        cplx p = jf;
        for (int l = 0; l <= set_.M; ++l) {
            out[l] = p;
            p *= e;
        }
    }

    BasisValues right_truncate(cplx z) const {
        const int M = set_.M;
        const int L = M + 1;
        BasisValues out;
        out.v.assign(L, cplx(0.0));
        const cplx u = 2.0 / (lambda_ * (1.0 + z));
        std::vector<cplx> f(L);
        for (int n = 1; n <= set_.N_tail; ++n) {
            summand(double(n), u, f.data());
            for (int l = 0; l < L; ++l) out.v[l] += f[l];
        }
        // Euler-Maclaurin from N0 = N_tail + 1
        const double N0 = set_.N_tail + 1.0;
        const double sig = s_.real(), t = s_.imag();
        const int K = set_em_pairs();

        // odd derivatives at N0 by the Cauchy integral on |x - N0| = N0/2
        const int Pc = 32;
        const double r = 0.5 * N0;
        std::vector<std::vector<cplx>> vals(Pc, std::vector<cplx>(L));
        for (int j = 0; j < Pc; ++j) {
            double th = 2.0 * M_PI * j / Pc;
            summand(N0 + r * cplx(std::cos(th), std::sin(th)), u, vals[j].data());
        }
        auto derivative = [&](int k, int l) {
            cplx acc = 0.0;
            for (int j = 0; j < Pc; ++j) {
                double th = -2.0 * M_PI * double((j * k) % Pc) / Pc;
                acc += vals[j][l] * cplx(std::cos(th), std::sin(th));
            }
            return acc / double(Pc) * std::tgamma(k + 1.0) / std::pow(r, k);
        };
        const auto& bf = detail::bernoulli_over_factorial();

        // integral over [N0, inf) in y = log(x/N0)
        const double Y = std::min(550.0, 37.0 / (2.0 * sig - 1.0));
        const double hy = std::min(1.0, 4.0 / (2.0 * std::abs(t) + 1e-300));
        const int panels = int(std::ceil(Y / hy));
        const double hp = Y / panels;
        const auto& gl = gauss_legendre_20();
        std::vector<cplx> integral(L, cplx(0.0));
        for (int pn = 0; pn < panels; ++pn) {
            double y0 = pn * hp;
            for (std::size_t i = 0; i < gl.x.size(); ++i) {
                double y = y0 + 0.5 * hp * (gl.x[i] + 1.0);
                double x = N0 * std::exp(y);
                summand(x, u, f.data());
                double wgt = 0.5 * hp * gl.w[i] * x;
                for (int l = 0; l < L; ++l) integral[l] += wgt * f[l];
            }
        }
        summand(N0, u, f.data());
        double rem = 0.0;
        for (int l = 0; l < L; ++l) {
            cplx tail = integral[l] + 0.5 * f[l];
            for (int j = 1; j <= K; ++j) tail -= bf[j] * derivative(2 * j - 1, l);
            out.v[l] += tail;
            rem = std::max(rem, std::abs(bf[K + 1] * derivative(2 * K + 1, l)));
        }
        // integrand beyond x = N0 e^Y: |F| <= e^{pi|t|} |u|^{2 sigma} x^{-2 sigma}
        double cut = std::exp(M_PI * std::abs(t)) * std::pow(std::abs(u), 2 * sig) *
                     std::exp((1.0 - 2.0 * sig) * (std::log(N0) + Y)) / (2.0 * sig - 1.0);
        out.tail = rem + cut;
        return out;
    }

    int set_em_pairs() const { return std::clamp(set_.em_pairs, 1, 19); }

    int q_;
    cplx s_;
    OperatorSettings set_;
    DiskSystem ds_;
    int P_ = 64;
    double lambda_ = 1.0;
    std::vector<Element> hinv_;
    std::vector<std::vector<double>> binom_;
    double cq_ = 0, Rq_ = 1, gamma_ = 0, kappa_ = 1;
    int N0_ = 4;
    PlusMinusForm form_ = PlusMinusForm::parity;
    int mid_ = 2;
};

inline OperatorMatrix assemble(int q, cplx s, int M, Mode mode, Symmetry sym, OperatorSettings set = {}) {
    set.M = M;
    set.mode = mode;
    return TransferOperator(q, s, set).assemble(sym);
}

// block-J involution on the full layout: (f_1, f_r, f_q) -> (J f_q, J f_r, J f_1)
inline Eigen::MatrixXcd block_J(const OperatorMatrix& om) {
    const Eigen::Index n = om.dim();
    Eigen::MatrixXcd Jb = Eigen::MatrixXcd::Zero(n, n);
    auto find = [&](int comp) -> const ComponentLayout* {
        for (const auto& c : om.layout)
            if (c.comp == comp) return &c;
        return nullptr;
    };
    auto map = [&](const ComponentLayout* from, const ComponentLayout* to) {
        for (std::size_t i = 0; i < from->degrees.size(); ++i) {
            int l = from->degrees[i];
            Jb(to->offset + Eigen::Index(i), from->offset + Eigen::Index(i)) = (l % 2) ? -1.0 : 1.0;
        }
    };
    if (om.symmetry != Symmetry::full) throw ModeError("block-J is defined on the full layout");
    map(find(kE1), find(kEq));
    map(find(kEq), find(kE1));
    if (auto r = find(kEr)) map(r, r);
    return Jb;
}

struct DecayFit {
    double C = 0.0;
    double rho = 0.0;
};

// least-squares fit of log v_k = log C + k log rho over entries above the roundoff floor
inline DecayFit fit_decay(const std::vector<double>& v, double floor_rel = 1e-14) {
    double vmax = 0.0;
    for (double x : v) vmax = std::max(vmax, x);
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (std::size_t k = 0; k < v.size(); ++k) {
        if (!(v[k] > floor_rel * vmax)) continue;
        double y = std::log(v[k]);
        sx += double(k);
        sy += y;
        sxx += double(k) * double(k);
        sxy += double(k) * y;
        ++n;
    }
    DecayFit f;
    if (n < 2) return f;
    double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    double icpt = (sy - slope * sx) / n;
    f.rho = std::exp(slope);
    f.C = std::exp(icpt);
    return f;
}

// max |entry| of each coefficient row, per target component
inline DecayFit entry_decay(const OperatorMatrix& om) {
    DecayFit worst;
    for (const auto& c : om.layout) {
        // indexed by degree; degrees absent from a parity layout stay zero and are skipped
        std::vector<double> rows(std::size_t(om.M + 1), 0.0);
        for (std::size_t i = 0; i < c.degrees.size(); ++i)
            rows[std::size_t(c.degrees[i])] = om.A.row(c.offset + Eigen::Index(i)).cwiseAbs().maxCoeff();
        auto f = fit_decay(rows);
        if (f.rho > worst.rho) worst = f;
    }
    return worst;
}

struct PoleProbe {
    std::vector<double> delta;
    std::vector<double> max_entry;
    double exponent = 0.0; // slope of log max|A_ij| against log delta
};

// growth of the hurwitz-mode entries along s = 1/2 + delta as delta -> 0+
inline PoleProbe pole_probe(int q, int M = 12, std::vector<double> delta = {1e-3, 5e-4, 2.5e-4, 1.25e-4}) {
    PoleProbe pr;
    pr.delta = delta;
    OperatorSettings set;
    set.M = M;
    set.mode = Mode::hurwitz;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (double d : delta) {
        auto om = TransferOperator(q, cplx(0.5 + d, 0.0), set).assemble(Symmetry::full);
        double m = om.A.cwiseAbs().maxCoeff();
        pr.max_entry.push_back(m);
        double x = std::log(d), y = std::log(m);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double n = double(delta.size());
    if (n >= 2) pr.exponent = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    return pr;
}

} // namespace hecke
