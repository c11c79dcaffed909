#include <gtest/gtest.h>

#include <random>

#include "hecke/analytic.hpp"

using namespace hecke;

TEST(Hurwitz, RiemannValues) {
    EXPECT_NEAR(std::abs(hurwitz_zeta(2.0, 1.0) - M_PI * M_PI / 6.0), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(hurwitz_zeta(3.0, 1.0) - 1.2020569031595943), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(hurwitz_zeta(4.0, 1.0) - std::pow(M_PI, 4) / 90.0), 0.0, 1e-14);
}

TEST(Hurwitz, ContinuationValues) {
    // zeta(0, w) = 1/2 - w, zeta(-1, 1) = -1/12, zeta(1/2, 1) = -1.4603545088...
    EXPECT_NEAR(std::abs(hurwitz_zeta(0.0, 0.3) - 0.2), 0.0, 1e-13);
    EXPECT_NEAR(std::abs(hurwitz_zeta(-1.0, 1.0) + 1.0 / 12.0), 0.0, 1e-13);
    EXPECT_NEAR(std::abs(hurwitz_zeta(0.5, 1.0) + 1.4603545088095868), 0.0, 1e-12);
}

TEST(Hurwitz, FirstRiemannZero) {
    EXPECT_LT(std::abs(hurwitz_zeta(cplx(0.5, 14.134725141734693), 1.0)), 1e-10);
}

TEST(Hurwitz, HalfShiftIdentity) {
    // zeta(a, 1/2) = (2^a - 1) zeta(a)
    for (cplx a : {cplx(2.5, 0.0), cplx(1.5, 3.0), cplx(0.3, 9.0)})
        EXPECT_LT(std::abs(hurwitz_zeta(a, 0.5) - (std::pow(2.0, a) - 1.0) * hurwitz_zeta(a, 1.0)),
                  1e-11 * std::max(1.0, std::abs(hurwitz_zeta(a, 0.5))));
}

TEST(Hurwitz, ShiftRecurrenceProperty) {
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> re(-2.0, 4.0), im(-20.0, 20.0), w(0.2, 3.0);
    for (int i = 0; i < 60; ++i) {
        cplx a(re(rng), im(rng));
        if (std::abs(a - 1.0) < 0.05) continue;
        cplx x(w(rng), 0.3 * im(rng) / 20.0);
        cplx lhs = hurwitz_zeta(a, x) - hurwitz_zeta(a, x + 1.0);
        cplx rhs = std::exp(-a * std::log(x));
        EXPECT_LT(std::abs(lhs - rhs), 1e-10 * std::max(1.0, std::abs(rhs))) << a << " " << x;
    }
}

TEST(Hurwitz, LadderMatchesSingleCalls) {
    cplx a0(0.5, 9.5), w(1.7, 0.2);
    auto lad = hurwitz_zeta_ladder(a0, w, 12);
    for (int m = 0; m < 12; ++m) EXPECT_LT(std::abs(lad[m] - hurwitz_zeta(a0 + double(m), w)), 1e-12 * std::abs(lad[m]) + 1e-14);
}

TEST(Hurwitz, PoleThrows) { EXPECT_THROW(hurwitz_zeta(1.0, 1.0), PoleError); }

TEST(Cauchy, ExponentialCoefficients) {
    Disk d(cplx(0.3), 0.5, 64);
    auto c = cauchy_coefficients([](cplx z) { return std::exp(z); }, d, 12);
    double f = 1.0;
    for (int k = 0; k <= 12; ++k) {
        if (k) f *= k;
        // Taylor coefficients, so rounding in the trapezoid sum grows like r^-k
        EXPECT_NEAR(std::abs(c[k] - std::exp(0.3) / f), 0.0, 1e-14 * std::pow(2.0, k));
    }
}

TEST(Cauchy, DiskValidation) {
    EXPECT_THROW(Disk(cplx(0.0), -1.0), DomainError);
    EXPECT_THROW(Disk(cplx(0.0), 1.0, 15), DomainError);
    EXPECT_EQ(default_quadrature_points(24), 64);
    EXPECT_EQ(default_quadrature_points(40), 128);
}

TEST(Quadrature, GaussLegendreIntegratesPolynomials) {
    const auto& g = gauss_legendre_20();
    double s = 0.0;
    for (std::size_t i = 0; i < g.x.size(); ++i) s += g.w[i] * std::pow(g.x[i], 38);
    EXPECT_NEAR(s, 2.0 / 39.0, 1e-14);
}

TEST(Binomial, SmallValues) {
    EXPECT_DOUBLE_EQ(binomial(10, 3), 120.0);
    EXPECT_DOUBLE_EQ(binomial(5, 0), 1.0);
}
