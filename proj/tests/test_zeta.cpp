#include <gtest/gtest.h>

#include "hecke/zeta.hpp"

using namespace hecke;

TEST(SmaleRuelle, SingleGeodesicQ4) {
    // one primitive class below 2: length 2 log(1 + sqrt 2); (1 - e^{-3l})^{-1}
    const double l = 2.0 * std::log(1.0 + std::sqrt(2.0));
    EXPECT_NEAR(std::abs(smale_ruelle(4, 3.0, 2.0) - 1.0 / (1.0 - std::exp(-3.0 * l))), 0.0, 1e-15);
    EXPECT_NEAR(smale_ruelle(4, 3.0, 2.0).real(), 1.0050762723, 1e-10);
}

TEST(SmaleRuelle, SelbergIsProductOfShifts) {
    auto spec = length_spectrum<double>(3, 9.0);
    auto pv = euler_product(3, 2.5, 9.0, 6, &spec);
    cplx prod = 1.0;
    for (int k = 0; k <= 6; ++k) prod /= smale_ruelle(3, 2.5 + k, 9.0, &spec);
    EXPECT_LT(std::abs(prod - pv.value), 1e-13);
}

TEST(EulerProduct, DomainAndEmptySpectrum) {
    EXPECT_THROW(euler_product(3, 1.0, 5.0), DomainError);
    EXPECT_THROW(euler_product(3, cplx(0.9, 3.0), 5.0), DomainError);
    EXPECT_THROW(euler_product(3, 2.0, 1.0), DomainError);
}

TEST(EulerProduct, TailBoundShrinksWithL) {
    auto a = euler_product(4, 2.0, 8.0);
    auto b = euler_product(4, 2.0, 10.0);
    EXPECT_LT(b.tail_bound, a.tail_bound);
    EXPECT_LT(std::abs(a.value - b.value) / std::abs(b.value), a.tail_bound);
    EXPECT_GT(b.fit_b, 0.5);
    EXPECT_LT(b.fit_b, 1.2);
}

TEST(Partition, IdentityHolds) {
    for (auto [q, n] : {std::pair{3, 2}, std::pair{4, 1}, std::pair{4, 2}, std::pair{5, 3}})
        for (cplx s : {cplx(1.5), cplx(2.0), cplx(0.8, 6.0)}) {
            auto r = partition_identity_check(q, n, s, 6);
            EXPECT_LE(r.discrepancy, 1e-13) << q << " " << n << " " << s;
        }
}

TEST(Partition, WordCounts) {
    EXPECT_EQ(partition_identity_check(3, 2, 2.0, 6).words, 72u);
    EXPECT_EQ(partition_identity_check(4, 2, 2.0, 6).words, 97u);
    EXPECT_THROW(partition_identity_check(3, 2, 0.4, 6), ModeError);
}
