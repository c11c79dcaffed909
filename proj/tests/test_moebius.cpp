#include <gtest/gtest.h>

#include <random>

#include "hecke/moebius.hpp"
#include "hecke/double_double.hpp"

using namespace hecke;

TEST(Moebius, HyperbolicGoldenElement) {
    // fixed points solve z^2 - z - 1 = 0; multiplier from t^2 - 3t + 1 = 0
    Element g{2.0, 1.0, 1.0, 1.0};
    auto fp = classify(g);
    ASSERT_EQ(fp.kind, Kind::hyperbolic);
    EXPECT_NEAR(fp.multiplier, 2.6180339887498949, 1e-13);
    ASSERT_TRUE(fp.z_star && !fp.z_star->infinite);
    EXPECT_NEAR(fp.z_star->value, 1.6180339887498949, 1e-13);
    EXPECT_NEAR(fp.derivative_at_zstar, 0.1458980337503155, 1e-13);
    EXPECT_NEAR(g.apply(fp.z_star->value), fp.z_star->value, 1e-13);
    EXPECT_NEAR(fp.derivative_at_zstar * fp.multiplier * fp.multiplier, 1.0, 1e-13);
    EXPECT_NEAR(fp.w_star->value, -0.6180339887498949, 1e-13);
}

TEST(Moebius, ParabolicEllipticIdentity) {
    EXPECT_EQ(classify(Element{1.0, 1.0, 0.0, 1.0}).kind, Kind::parabolic);
    EXPECT_TRUE(classify(Element{1.0, 1.0, 0.0, 1.0}).z_star->infinite);
    EXPECT_EQ(classify(Element{0.0, -1.0, 1.0, 0.0}).kind, Kind::elliptic);
    EXPECT_EQ(classify(Element{-1.0, 0.0, 0.0, -1.0}).kind, Kind::identity);
    auto p = classify(Element{1.0, 0.0, -1.0, 1.0});
    EXPECT_EQ(p.kind, Kind::parabolic);
    EXPECT_NEAR(p.z_star->value, 0.0, 1e-15);
}

TEST(Moebius, DiagonalHyperbolicWithInfiniteFixedPoint) {
    // z -> 4z: infinity attracts, 0 repels
    auto fp = classify(Element{2.0, 0.0, 0.0, 0.5});
    ASSERT_EQ(fp.kind, Kind::hyperbolic);
    EXPECT_TRUE(fp.z_star->infinite);
    EXPECT_NEAR(fp.w_star->value, 0.0, 1e-15);
    EXPECT_NEAR(fp.derivative_at_zstar, 0.25, 1e-15);
    // z -> z/4: the other way round
    auto gp = classify(Element{0.5, 0.0, 0.0, 2.0});
    EXPECT_NEAR(gp.z_star->value, 0.0, 1e-15);
    EXPECT_TRUE(gp.w_star->infinite);
    EXPECT_NEAR(gp.derivative_at_zstar, 0.25, 1e-15);
}

TEST(Moebius, LambdaClosedForms) {
    EXPECT_DOUBLE_EQ(hecke_lambda<double>(3), 1.0);
    EXPECT_NEAR(hecke_lambda<double>(4), std::sqrt(2.0), 1e-16);
    EXPECT_NEAR(hecke_lambda<double>(5), (1.0 + std::sqrt(5.0)) / 2.0, 1e-15);
    EXPECT_NEAR(hecke_lambda<double>(6), std::sqrt(3.0), 1e-16);
    EXPECT_THROW(hecke_lambda<double>(2), DomainError);
}

TEST(Moebius, GeneratorsForQ3) {
    auto gen = hecke_generators<double>(3);
    EXPECT_EQ(gen.g[1].a, 1.0);
    EXPECT_EQ(gen.g[1].b, -1.0);
    EXPECT_EQ(gen.g[1].c, 0.0);
    EXPECT_EQ(gen.g[1].d, 1.0);
    EXPECT_EQ(gen.g[2].a, 1.0);
    EXPECT_EQ(gen.g[2].b, 0.0);
    EXPECT_EQ(gen.g[2].c, -1.0);
    EXPECT_EQ(gen.g[2].d, 1.0);
}

TEST(Moebius, GroupIdentitiesHoldForManyQ) {
    for (int q = 3; q <= 16; ++q) EXPECT_LE(group_identities<double>(q).max_deviation(), 1e-10) << "q=" << q;
}

TEST(Moebius, DoubleDoubleIdentitiesTighter) {
    for (int q : {5, 7, 9}) {
        auto dd = group_identities<DoubleDouble>(q);
        EXPECT_LE(dd.max_deviation(), 1e-25) << "q=" << q;
        EXPECT_NEAR(to_double(hecke_lambda<DoubleDouble>(q)), hecke_lambda<double>(q), 1e-15);
    }
}

TEST(Moebius, GeneratorsHaveUnitDeterminant) {
    for (int q = 3; q <= 12; ++q) {
        auto gen = hecke_generators<double>(q);
        for (int k = 1; k < q; ++k) EXPECT_NEAR(gen.g[k].det(), 1.0, 1e-13);
    }
}

TEST(Moebius, ActionIsHomomorphismOnSamples) {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    auto gen = hecke_generators<double>(7);
    for (int i = 0; i < 50; ++i) {
        const auto& a = gen.g[1 + i % 6];
        const auto& b = gen.g[1 + (i * 5) % 6];
        cplx z(u(rng), 0.1 + std::abs(u(rng)));
        EXPECT_NEAR(std::abs((a * b).apply(z) - a.apply(b.apply(z))), 0.0, 1e-12);
    }
}

TEST(Moebius, CanonicalFormIsSignInvariant) {
    Element g{-2.0, -1.0, -1.0, -1.0};
    auto c = g.canonical();
    EXPECT_GT(c.a, 0.0);
    EXPECT_LE(max_entry_deviation(c, Element{2.0, 1.0, 1.0, 1.0}), 1e-15);
}
