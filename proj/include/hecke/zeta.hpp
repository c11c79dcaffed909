#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "coding.hpp"
#include "errors.hpp"
#include "moebius.hpp"

namespace hecke {

struct ProductValue {
    cplx value = 1.0;
    double tail_bound = 0.0; // relative, for the length cutoff
    int K_max = 0;
    std::size_t primitive_count = 0;
    double fit_A = 0.0, fit_b = 0.0; // N(l) ~ A e^{b l}
};

namespace detail {

inline void require_re_s_above_one(cplx s) {
    if (!(s.real() > 1.0)) throw DomainError("product over geodesics requires Re s > 1");
}

inline std::vector<double> primitive_lengths(const std::vector<LengthSpectrumEntry>& spec) {
    std::vector<double> out;
    for (const auto& e : spec)
        if (e.primitive) out.push_back(e.length);
    std::sort(out.begin(), out.end());
    return out;
}

// least k with sum_l e^{-(sigma+k+1) l}/(1 - e^{-l}) < 1e-14
inline int auto_k_max(const std::vector<double>& lengths, double sigma) {
    if (lengths.empty()) return 0;
    for (int K = 0; K < 400; ++K) {
        double t = 0.0;
        for (double l : lengths) t += std::exp(-(sigma + K + 1) * l) / (1.0 - std::exp(-l));
        if (t < 1e-14) return K;
    }
    return 400;
}

} // namespace detail

// counting function fit on [L/2, L]: least squares of log N(l) = log A + b l
inline void fit_counting(const std::vector<double>& lengths, double L, double& A, double& b) {
    A = b = 0.0;
    if (lengths.size() < 4) return;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (int i = 0; i <= 40; ++i) {
        double l = 0.5 * L + 0.5 * L * i / 40.0;
        double N = double(std::upper_bound(lengths.begin(), lengths.end(), l) - lengths.begin());
        if (N < 1) continue;
        double y = std::log(N);
        sx += l;
        sy += y;
        sxx += l * l;
        sxy += l * y;
        ++n;
    }
    if (n < 2) return;
    b = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    A = std::exp((sy - b * sx) / n);
}

// relative bound on the omitted lengths > L: |log| of each factor product is at most
// 2 e^{-sigma l}/(1 - e^{-l}); integrate against dN with the fitted density and a x4 margin
inline double length_tail_bound(double A, double b, double sigma, double L) {
    if (!(A > 0) || !(b > 0)) return std::numeric_limits<double>::infinity();
    if (!(sigma > b)) return std::numeric_limits<double>::infinity();
    double T = 4.0 * 2.0 * A * b * std::exp((b - sigma) * L) / ((sigma - b) * (1.0 - std::exp(-L)));
    return std::expm1(T);
}

// prod_l prod_{k=0}^{K} (1 - e^{-(s+k) l}) over the given primitive lengths
inline cplx euler_product_from_lengths(const std::vector<double>& lengths, cplx s, int K_max) {
    cplx logp = 0.0;
    for (double l : lengths)
        for (int k = 0; k <= K_max; ++k) logp += std::log(1.0 - std::exp(-(s + double(k)) * l));
    return std::exp(logp);
}

inline ProductValue euler_product(int q, cplx s, double L_max, int K_max = -1,
                                  const std::vector<LengthSpectrumEntry>* spectrum = nullptr) {
    detail::require_re_s_above_one(s);
    std::vector<LengthSpectrumEntry> own;
    if (!spectrum) {
        own = length_spectrum<double>(q, L_max);
        spectrum = &own;
    }
    std::vector<LengthSpectrumEntry> within;
    for (const auto& e : *spectrum)
        if (e.length <= L_max) within.push_back(e);
    auto lengths = detail::primitive_lengths(within);
    if (lengths.empty()) throw DomainError("L_max is below the shortest geodesic length");
    ProductValue out;
    out.K_max = K_max >= 0 ? K_max : detail::auto_k_max(lengths, s.real());
    out.value = euler_product_from_lengths(lengths, s, out.K_max);
    out.primitive_count = lengths.size();
    fit_counting(lengths, L_max, out.fit_A, out.fit_b);
    out.tail_bound = length_tail_bound(out.fit_A, out.fit_b, s.real(), L_max);
    return out;
}

inline cplx smale_ruelle_from_lengths(const std::vector<double>& lengths, cplx s) {
    cplx logp = 0.0;
    for (double l : lengths) logp -= std::log(1.0 - std::exp(-s * l));
    return std::exp(logp);
}

inline cplx smale_ruelle(int q, cplx s, double L_max, const std::vector<LengthSpectrumEntry>* spectrum = nullptr) {
    detail::require_re_s_above_one(s);
    std::vector<LengthSpectrumEntry> own;
    if (!spectrum) {
        own = length_spectrum<double>(q, L_max);
        spectrum = &own;
    }
    std::vector<LengthSpectrumEntry> within;
    for (const auto& e : *spectrum)
        if (e.length <= L_max) within.push_back(e);
    return smale_ruelle_from_lengths(detail::primitive_lengths(within), s);
}

struct PartitionReport {
    int q = 0, n = 0, cap = 0;
    cplx s;
    std::size_t words = 0;
    cplx Z_n = 0.0;       // sum of a'(z*)^s over periodic points
    cplx trace_s = 0.0;   // word sum at s
    cplx trace_s1 = 0.0;  // word sum at s+1
    double discrepancy = 0.0;
};

// Z_n from derivatives at attracting fixed points against Tr_s - Tr_{s+1} from traces,
// over the same enumeration of regular words
inline PartitionReport partition_identity_check(int q, int n, cplx s, int cap) {
    if (!(s.real() > 0.5)) throw ModeError("partition identity requires Re s > 1/2");
    PartitionReport rep;
    rep.q = q;
    rep.n = n;
    rep.cap = cap;
    rep.s = s;
    auto words = enumerate_regular_words(q, n, cap);
    rep.words = words.size();
    auto gen = hecke_generators<double>(q);
    for (const auto& w : words) {
        auto fp = classify(word_to_element<double>(q, w));
        if (fp.kind != Kind::hyperbolic) throw ConsistencyError("regular word is not hyperbolic: " + w.str());
        double ad = std::abs(fp.derivative_at_zstar);
        rep.Z_n += std::exp(s * std::log(ad));
        double tr = word_trace(gen, w);
        double lm = (tr + std::sqrt(tr * tr - 4.0)) / 2.0;
        double x = 1.0 / (lm * lm);
        rep.trace_s += std::exp(-2.0 * s * std::log(lm)) / (1.0 - x);
        rep.trace_s1 += std::exp(-2.0 * (s + 1.0) * std::log(lm)) / (1.0 - x);
    }
    rep.discrepancy = std::abs(rep.Z_n - (rep.trace_s - rep.trace_s1));
    return rep;
}

} // namespace hecke
