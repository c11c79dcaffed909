#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "errors.hpp"
#include "moebius.hpp"

namespace hecke {

enum class SymbolKind { parabolic_left, hyperbolic, parabolic_right };

struct BranchSymbol {
    SymbolKind kind = SymbolKind::hyperbolic;
    int k = 2;
    int m = 1;

    static BranchSymbol left(int m) { return {SymbolKind::parabolic_left, 1, m}; }
    static BranchSymbol right(int q, int m) { return {SymbolKind::parabolic_right, q - 1, m}; }
    static BranchSymbol hyp(int k) { return {SymbolKind::hyperbolic, k, 1}; }

    bool parabolic() const { return kind != SymbolKind::hyperbolic; }
    // ordering h_1^1 < h_1^2 < ... < h_2 < ... < h_{q-1}^1 < ...
    std::pair<int, int> key() const { return {k, m}; }
    friend bool operator<(const BranchSymbol& x, const BranchSymbol& y) { return x.key() < y.key(); }
    friend bool operator==(const BranchSymbol& x, const BranchSymbol& y) { return x.key() == y.key(); }
    friend bool operator!=(const BranchSymbol& x, const BranchSymbol& y) { return !(x == y); }

    std::string str() const {
        if (kind == SymbolKind::hyperbolic) return "h" + std::to_string(k);
        return "h" + std::to_string(k) + "^" + std::to_string(m);
    }
};

inline void validate_symbol(int q, const BranchSymbol& b) {
    if (b.m < 1) throw DomainError("exponent must be >= 1");
    if (b.k < 1 || b.k > q - 1) throw DomainError("branch index out of range");
    if (b.kind == SymbolKind::parabolic_left && b.k != 1) throw DomainError("left parabolic symbol must have k = 1");
    if (b.kind == SymbolKind::parabolic_right && b.k != q - 1) throw DomainError("right parabolic symbol must have k = q-1");
    if (b.kind == SymbolKind::hyperbolic && (b.k < 2 || b.k > q - 2 || b.m != 1))
        throw DomainError("hyperbolic symbol must have 2 <= k <= q-2 and exponent 1");
}

struct Word {
    std::vector<BranchSymbol> symbols;

    std::size_t size() const { return symbols.size(); }
    bool empty() const { return symbols.empty(); }

    bool reduced() const {
        for (std::size_t i = 0; i + 1 < symbols.size(); ++i)
            if (symbols[i].parabolic() && symbols[i].kind == symbols[i + 1].kind) return false;
        return true;
    }
    bool regular() const {
        if (!reduced() || symbols.empty()) return false;
        const auto& f = symbols.front();
        const auto& l = symbols.back();
        return !(f.parabolic() && f.kind == l.kind);
    }

    Word rotated(std::size_t r) const {
        Word w;
        const std::size_t n = symbols.size();
        for (std::size_t i = 0; i < n; ++i) w.symbols.push_back(symbols[(i + r) % n]);
        return w;
    }

    // lexicographically least rotation
    Word canonical_rotation() const {
        Word best = *this;
        for (std::size_t r = 1; r < symbols.size(); ++r) {
            Word w = rotated(r);
            if (w.symbols < best.symbols) best = w;
        }
        return best;
    }

    bool primitive() const {
        const std::size_t n = symbols.size();
        for (std::size_t p = 1; p < n; ++p) {
            if (n % p) continue;
            bool ok = true;
            for (std::size_t i = p; i < n && ok; ++i) ok = symbols[i] == symbols[i - p];
            if (ok) return false;
        }
        return true;
    }

    std::string str() const {
        if (symbols.empty()) return "e";
        std::string s;
        for (std::size_t i = 0; i < symbols.size(); ++i) s += (i ? " " : "") + symbols[i].str();
        return s;
    }

    friend bool operator==(const Word& a, const Word& b) { return a.symbols == b.symbols; }
    friend bool operator<(const Word& a, const Word& b) { return a.symbols < b.symbols; }
};

// g^{-1} for the symbol, in the slow picture; all entries >= 0 and >= identity
template <typename Real = double>
GroupElement<Real> slow_inverse_branch(const HeckeGenerators<Real>& gen, const BranchSymbol& b) {
    Real mm(double(b.m));
    Real one(1.0), zero(0.0);
    if (b.kind == SymbolKind::parabolic_left) return {one, mm * gen.lambda, zero, one};
    if (b.kind == SymbolKind::parabolic_right) return {one, zero, mm * gen.lambda, one};
    return gen.g[b.k].inverse();
}

// slow-picture element g_k^m of a symbol
template <typename Real = double>
GroupElement<Real> slow_branch(const HeckeGenerators<Real>& gen, const BranchSymbol& b) {
    Real mm(double(b.m));
    Real one(1.0), zero(0.0);
    if (b.kind == SymbolKind::parabolic_left) return {one, -(mm * gen.lambda), zero, one, b.str()};
    if (b.kind == SymbolKind::parabolic_right) return {one, zero, -(mm * gen.lambda), one, b.str()};
    auto g = gen.g[b.k];
    g.label = b.str();
    return g;
}

// h-element of a symbol
template <typename Real = double>
GroupElement<Real> symbol_element(const HeckeGenerators<Real>& gen, const BranchSymbol& b) {
    auto h = conjugate_by_T(slow_branch(gen, b));
    h.label = b.str();
    return h;
}

template <typename Real = double>
GroupElement<Real> word_to_element(int q, const Word& w) {
    auto gen = hecke_generators<Real>(q);
    for (const auto& b : w.symbols) validate_symbol(q, b);
    if (!w.reduced()) throw DomainError("word is not reduced: " + w.str());
    auto out = GroupElement<Real>::identity();
    out.label.clear();
    for (const auto& b : w.symbols) out = out * symbol_element(gen, b);
    if (w.empty()) out.label = "id";
    return out;
}

// trace of the word as a positive number, from the nonnegative inverse branches
template <typename Real = double>
Real word_trace(const HeckeGenerators<Real>& gen, const Word& w) {
    auto p = GroupElement<Real>::identity();
    for (const auto& b : w.symbols) p = slow_inverse_branch(gen, b) * p;
    return p.trace();
}

// ---------------------------------------------------------------- partitions

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    bool hi_infinite = false;
    bool contains(double x, double tol = 0.0) const {
        return x > lo + tol && (hi_infinite || x < hi - tol);
    }
    bool empty() const { return !hi_infinite && hi <= lo; }
};

struct SlowPartition {
    int q = 0;
    double lambda = 0.0;
    std::vector<Interval> D;      // D_st_k, k = 1..q-1 (index 0 unused)
    std::vector<Interval> E_cell; // Tconj(D_st_k)
    Interval E1, Er, Eq1;
    double endpoint_discrepancy = 0.0; // Moebius image vs closed form
};

inline double tconj(double t) { return (t - 1.0) / (t + 1.0); }
inline double tconj_inv(double x) { return (1.0 + x) / (1.0 - x); }

inline SlowPartition slow_partition(int q) {
    auto gen = hecke_generators<double>(q);
    SlowPartition P;
    P.q = q;
    P.lambda = gen.lambda;
    const double lam = gen.lambda;
    P.D.resize(q);
    P.E_cell.resize(q);
    auto sk = [&](int k) { return std::sin(k * M_PI / q) / std::sin(M_PI / q); };
    for (int k = 1; k < q; ++k) {
        auto gi = gen.g[k].inverse();
        Interval I;
        I.lo = gi.apply(0.0);
        cplx hi = gi.apply(kComplexInfinity);
        I.hi_infinite = is_infinite(hi);
        I.hi = I.hi_infinite ? 0.0 : hi.real();
        double lo_closed = k == 1 ? lam : sk(k + 1) / sk(k);
        double hi_closed = k == 1 ? 0.0 : sk(k) / sk(k - 1);
        P.endpoint_discrepancy = std::max(P.endpoint_discrepancy, std::abs(I.lo - lo_closed));
        if (!I.hi_infinite) P.endpoint_discrepancy = std::max(P.endpoint_discrepancy, std::abs(I.hi - hi_closed));
        P.D[k] = I;
        Interval E;
        E.lo = tconj(I.lo);
        E.hi = I.hi_infinite ? 1.0 : tconj(I.hi);
        P.E_cell[k] = E;
    }
    double e = (lam - 1.0) / (lam + 1.0);
    P.E1 = {e, 1.0, false};
    P.Er = {-e, e, false};
    P.Eq1 = {-1.0, -e, false};
    return P;
}

struct SlowStep {
    int k = 0;
    double y = 0.0;
};

inline SlowStep slow_step(int q, double x, double tol = 1e-12) {
    if (!(x > 0)) throw BoundaryError("slow_step requires x > 0");
    auto gen = hecke_generators<double>(q);
    auto P = slow_partition(q);
    for (int k = 1; k < q; ++k) {
        const auto& I = P.D[k];
        if (std::abs(x - I.lo) <= tol || (!I.hi_infinite && std::abs(x - I.hi) <= tol))
            throw BoundaryError("x = " + std::to_string(x) + " is within tolerance of a cell boundary");
        if (I.contains(x)) return {k, gen.g[k].apply(x)};
    }
    throw BoundaryError("x = " + std::to_string(x) + " not in any slow cell");
}

struct FastStep {
    BranchSymbol symbol;
    double y = 0.0;
};

inline FastStep fast_step(int q, double x, double tol = 1e-12) {
    if (!(x > -1.0 && x < 1.0)) throw BoundaryError("fast_step requires x in (-1, 1)");
    auto gen = hecke_generators<double>(q);
    auto P = slow_partition(q);
    const double lam = gen.lambda;
    double t = tconj_inv(x);
    auto near = [&](double b) { return std::abs(x - b) <= tol; };
    for (int k = 1; k < q; ++k) {
        const auto& E = P.E_cell[k];
        if (near(E.lo) || near(E.hi))
            throw BoundaryError("x = " + std::to_string(x) + " is within tolerance of a cell boundary");
    }
    BranchSymbol b;
    if (x > P.E_cell[1].lo) {
        int n = std::max(1, int(std::floor(t / lam)));
        if (near(tconj(n * lam)) || near(tconj((n + 1) * lam)))
            throw BoundaryError("x = " + std::to_string(x) + " is within tolerance of a cell boundary");
        b = BranchSymbol::left(n);
    } else if (x < P.E_cell[q - 1].hi) {
        int n = std::max(1, int(std::floor(1.0 / (t * lam))));
        if (near(tconj(1.0 / (n * lam))) || near(tconj(1.0 / ((n + 1) * lam))))
            throw BoundaryError("x = " + std::to_string(x) + " is within tolerance of a cell boundary");
        b = BranchSymbol::right(q, n);
    } else {
        int found = 0;
        for (int k = 2; k <= q - 2; ++k)
            if (P.E_cell[k].contains(x)) found = k;
        if (!found) throw BoundaryError("x = " + std::to_string(x) + " not in any fast cell");
        b = BranchSymbol::hyp(found);
    }
    return {b, symbol_element(gen, b).apply(x)};
}

// ---------------------------------------------------------------- enumeration

inline std::vector<BranchSymbol> alphabet(int q, int cap) {
    std::vector<BranchSymbol> a;
    for (int m = 1; m <= cap; ++m) a.push_back(BranchSymbol::left(m));
    for (int k = 2; k <= q - 2; ++k) a.push_back(BranchSymbol::hyp(k));
    for (int m = 1; m <= cap; ++m) a.push_back(BranchSymbol::right(q, m));
    return a;
}

inline std::vector<Word> enumerate_reduced_words(int q, int n, int cap) {
    std::vector<Word> out;
    if (n < 0 || cap < 1) return out;
    auto A = alphabet(q, cap);
    Word w;
    std::function<void()> rec = [&] {
        if (int(w.size()) == n) {
            out.push_back(w);
            return;
        }
        for (const auto& b : A) {
            if (!w.empty() && b.parabolic() && w.symbols.back().kind == b.kind) continue;
            w.symbols.push_back(b);
            rec();
            w.symbols.pop_back();
        }
    };
    rec();
    return out;
}

inline std::vector<Word> enumerate_regular_words(int q, int n, int exponent_cap) {
    std::vector<Word> out;
    if (n < 1 || exponent_cap < 1) return out;
    for (auto& w : enumerate_reduced_words(q, n, exponent_cap))
        if (w.regular()) out.push_back(std::move(w));
    return out;
}

struct BijectionReport {
    int q = 0, n = 0, cap = 0;
    std::size_t words = 0;
    std::size_t distinct_elements = 0;
    bool all_hyperbolic = true;
    std::vector<std::string> violations;
    bool ok() const { return violations.empty() && all_hyperbolic && distinct_elements == words; }
};

// distinct canonical matrices, compared entrywise within tol
inline std::size_t count_distinct(std::vector<Element> els, double tol = 1e-9) {
    auto key = [](const Element& e) { return std::make_tuple(e.a, e.b, e.c, e.d); };
    std::sort(els.begin(), els.end(), [&](const Element& x, const Element& y) { return key(x) < key(y); });
    std::size_t distinct = 0;
    std::vector<Element> reps;
    for (const auto& e : els) {
        bool dup = false;
        for (auto it = reps.rbegin(); it != reps.rend(); ++it) {
            if (std::abs(it->a - e.a) > tol) break;
            if (std::abs(it->b - e.b) <= tol && std::abs(it->c - e.c) <= tol && std::abs(it->d - e.d) <= tol) {
                dup = true;
                break;
            }
        }
        if (!dup) {
            reps.push_back(e);
            ++distinct;
        }
    }
    return distinct;
}

inline BijectionReport check_bijection(int q, int n, int cap) {
    BijectionReport rep;
    rep.q = q;
    rep.n = n;
    rep.cap = cap;
    auto words = enumerate_regular_words(q, n, cap);
    rep.words = words.size();
    std::vector<Element> els;
    for (const auto& w : words) {
        auto e = word_to_element<double>(q, w).canonical();
        auto fp = classify(e);
        if (fp.kind != Kind::hyperbolic) {
            rep.all_hyperbolic = false;
            rep.violations.push_back("not hyperbolic: " + w.str());
        }
        els.push_back(e);
    }
    rep.distinct_elements = count_distinct(els);
    if (rep.distinct_elements != rep.words) rep.violations.push_back("word map not injective");
    return rep;
}

// ---------------------------------------------------------------- length spectrum

struct LengthSpectrumEntry {
    Word word; // least rotation
    double trace = 0.0;
    double length = 0.0;
    bool primitive = true;
    int multiplicity = 1;
};

inline double length_from_trace(double tr) {
    double a = std::abs(tr);
    return 2.0 * std::log((a + std::sqrt(a * a - 4.0)) / 2.0);
}

template <typename Real>
double length_from_trace_real(Real tr) {
    Real a = tr < Real(0.0) ? -tr : tr;
    Real m = (a + RealTraits<Real>::sqrt(a * a - Real(4.0))) / Real(2.0);
    return 2.0 * to_double(RealTraits<Real>::log(m));
}

// every cyclic class of regular words with length <= L_max; all inverse
// branches are >= identity entrywise, so prefix traces bound the word trace
template <typename Real = double>
std::vector<LengthSpectrumEntry> length_spectrum(int q, double L_max, double group_tol = 1e-9) {
    std::vector<LengthSpectrumEntry> out;
    if (!(L_max > 0)) return out;
    auto gen = hecke_generators<Real>(q);
    const double lam = to_double(gen.lambda);
    const double maxtr = 2.0 * std::cosh(L_max / 2.0) * (1.0 + 1e-9);
    // a regular word containing a parabolic m-th power has trace >= 2 + m*lambda*s_min, s_min = 1
    const int cap = std::max(1, int(std::floor((maxtr - 2.0) / lam)) + 1);

    std::vector<BranchSymbol> symbols = alphabet(q, cap);
    std::vector<GroupElement<Real>> inv;
    for (const auto& b : symbols) inv.push_back(slow_inverse_branch(gen, b));

    Word w;
    std::vector<GroupElement<Real>> prod{GroupElement<Real>::identity()};
    std::function<void()> rec = [&] {
        if (!w.empty() && w.regular()) {
            Word c = w.canonical_rotation();
            if (c == w) {
                Real tr = prod.back().trace();
                double len = length_from_trace_real(tr);
                if (len <= L_max) out.push_back({w, to_double(tr), len, w.primitive(), 1});
            }
        }
        for (std::size_t i = 0; i < symbols.size(); ++i) {
            const auto& b = symbols[i];
            if (!w.empty() && b.parabolic() && w.symbols.back().kind == b.kind) continue;
            // rotations start at the least symbol, so later symbols may not undercut the first
            if (!w.empty() && b < w.symbols.front()) continue;
            auto p = inv[i] * prod.back();
            if (to_double(p.trace()) > maxtr) {
                // traces increase with the exponent inside a parabolic run
                if (b.parabolic()) {
                    while (i + 1 < symbols.size() && symbols[i + 1].kind == b.kind) ++i;
                }
                continue;
            }
            w.symbols.push_back(b);
            prod.push_back(p);
            rec();
            prod.pop_back();
            w.symbols.pop_back();
        }
    };
    rec();

    std::sort(out.begin(), out.end(), [](const LengthSpectrumEntry& x, const LengthSpectrumEntry& y) {
        if (x.length != y.length) return x.length < y.length;
        return x.word < y.word;
    });
    for (std::size_t i = 0; i < out.size();) {
        std::size_t j = i;
        while (j < out.size() && out[j].length - out[i].length <= group_tol) ++j;
        for (std::size_t k = i; k < j; ++k) out[k].multiplicity = int(j - i);
        i = j;
    }
    return out;
}

} // namespace hecke
