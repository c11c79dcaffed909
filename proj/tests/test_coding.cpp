#include <gtest/gtest.h>

#include <random>
#include <set>

#include "hecke/coding.hpp"

using namespace hecke;

namespace {

Word make_word(std::initializer_list<BranchSymbol> s) {
    Word w;
    w.symbols = s;
    return w;
}

} // namespace

TEST(Coding, RegularWordCountsQ3) {
    // h1^a h2^b and h2^b h1^a are both regular
    EXPECT_EQ(enumerate_regular_words(3, 2, 2).size(), 8u);
    EXPECT_EQ(enumerate_regular_words(3, 2, 3).size(), 18u);
    EXPECT_EQ(enumerate_regular_words(3, 1, 5).size(), 0u);
}

TEST(Coding, BijectionSmallCases) {
    for (int q : {3, 4, 5, 6}) {
        for (int n = 1; n <= 3; ++n) {
            auto r = check_bijection(q, n, 3);
            EXPECT_TRUE(r.ok()) << "q=" << q << " n=" << n;
        }
    }
    EXPECT_EQ(check_bijection(3, 2, 3).distinct_elements, 18u);
}

TEST(Coding, TraceOfH1H2IsThree) {
    auto gen = hecke_generators<double>(3);
    auto w = make_word({BranchSymbol::left(1), BranchSymbol::right(3, 1)});
    EXPECT_NEAR(word_trace(gen, w), 3.0, 1e-14);
    EXPECT_NEAR(word_to_element<double>(3, w).trace(), 3.0, 1e-14);
}

TEST(Coding, PureParabolicPowersHaveTraceTwo) {
    for (int q : {3, 5, 8}) {
        auto gen = hecke_generators<double>(q);
        for (int m = 1; m <= 6; ++m) {
            EXPECT_EQ(word_trace(gen, make_word({BranchSymbol::left(m)})), 2.0);
            EXPECT_EQ(word_trace(gen, make_word({BranchSymbol::right(q, m)})), 2.0);
            EXPECT_FALSE(make_word({BranchSymbol::left(m)}).regular());
        }
    }
}

TEST(Coding, ReducedAndRegular) {
    auto w = make_word({BranchSymbol::left(1), BranchSymbol::left(2)});
    EXPECT_FALSE(w.reduced());
    auto v = make_word({BranchSymbol::left(1), BranchSymbol::hyp(2), BranchSymbol::left(2)});
    EXPECT_TRUE(v.reduced());
    EXPECT_FALSE(v.regular());
    EXPECT_THROW(word_to_element<double>(5, w), DomainError);
    EXPECT_THROW(validate_symbol(3, BranchSymbol::hyp(2)), DomainError);
}

TEST(Coding, PrimitiveDetection) {
    auto a = make_word({BranchSymbol::left(1), BranchSymbol::right(3, 1)});
    auto aa = make_word({BranchSymbol::left(1), BranchSymbol::right(3, 1), BranchSymbol::left(1), BranchSymbol::right(3, 1)});
    EXPECT_TRUE(a.primitive());
    EXPECT_FALSE(aa.primitive());
}

TEST(Coding, ShortestGeodesicQ3) {
    auto spec = length_spectrum<double>(3, 2.0);
    ASSERT_EQ(spec.size(), 1u);
    EXPECT_NEAR(spec[0].length, 2.0 * std::log((3.0 + std::sqrt(5.0)) / 2.0), 1e-13);
    EXPECT_NEAR(spec[0].length, 1.9248473002, 1e-9);
    EXPECT_NEAR(spec[0].trace, 3.0, 1e-14);
}

TEST(Coding, ShortestGeodesicQ4) {
    // h2 alone: trace 2 sqrt 2, length 2 log(1 + sqrt 2)
    auto spec = length_spectrum<double>(4, 2.0);
    ASSERT_EQ(spec.size(), 1u);
    EXPECT_NEAR(spec[0].length, 2.0 * std::log(1.0 + std::sqrt(2.0)), 1e-13);
}

TEST(Coding, SpectrumAgreesWithBruteForce) {
    // brute force: all regular words of length <= 4 with exponents <= 11, up to rotation.
    // 2 cosh(5/2) < 2 + 11 lambda caps the exponent, and (h1 h2)^3 already has trace 18
    const int q = 3;
    const double L = 5.0;
    std::multiset<long long> brute;
    for (int n = 1; n <= 4; ++n)
        for (auto& w : enumerate_regular_words(q, n, 11)) {
            if (!(w.canonical_rotation() == w)) continue;
            double len = length_from_trace(word_to_element<double>(q, w).trace());
            if (len <= L) brute.insert(std::llround(len * 1e8));
        }
    std::multiset<long long> got;
    for (const auto& e : length_spectrum<double>(q, L)) got.insert(std::llround(e.length * 1e8));
    EXPECT_EQ(got, brute);
}

TEST(Coding, SpectrumEntriesAreCanonicalAndRegular) {
    for (int q : {4, 5}) {
        for (const auto& e : length_spectrum<double>(q, 6.0)) {
            EXPECT_TRUE(e.word.regular());
            EXPECT_EQ(e.word.canonical_rotation(), e.word);
            EXPECT_GT(e.length, 0.0);
            EXPECT_EQ(e.primitive, e.word.primitive());
        }
    }
}

TEST(Coding, RotationPreservesTrace) {
    std::mt19937 rng(11);
    for (int q : {3, 5, 6}) {
        auto gen = hecke_generators<double>(q);
        // q = 3 has no regular words of odd length
        auto words = enumerate_regular_words(q, 4, 3);
        for (int i = 0; i < 40; ++i) {
            const auto& w = words[rng() % words.size()];
            double t = word_trace(gen, w);
            for (std::size_t r = 1; r < w.size(); ++r) EXPECT_NEAR(word_trace(gen, w.rotated(r)), t, 1e-11 * t);
        }
    }
}

TEST(Coding, DoubleDoubleSpectrumMatches) {
    auto a = length_spectrum<double>(5, 5.0);
    auto b = length_spectrum<DoubleDouble>(5, 5.0);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(a[i].word, b[i].word);
        EXPECT_NEAR(a[i].length, b[i].length, 1e-12);
    }
}

TEST(Coding, SlowPartitionEndpoints) {
    for (int q = 3; q <= 10; ++q) {
        auto P = slow_partition(q);
        EXPECT_LE(P.endpoint_discrepancy, 1e-12);
        for (int k = 1; k < q; ++k) EXPECT_FALSE(P.D[k].empty());
    }
}

TEST(Coding, SlowAndFastSteps) {
    auto s = slow_step(3, 2.5);
    EXPECT_EQ(s.k, 1);
    EXPECT_NEAR(s.y, 1.5, 1e-15);
    EXPECT_THROW(slow_step(3, -1.0), BoundaryError);
    EXPECT_THROW(fast_step(3, 1.0), BoundaryError);
    EXPECT_NEAR(tconj_inv(tconj(2.75)), 2.75, 1e-14);
}
