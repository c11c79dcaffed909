#include <gtest/gtest.h>

#include <random>

#include "hecke/period.hpp"

using namespace hecke;

namespace {

// 1 - tau_s(Q) 1: an exact odd solution for every q
RealFunction coboundary(cplx s) {
    return [s](double t) { return 1.0 - std::exp(-2.0 * s * std::log(t)); };
}

std::vector<double> sample_points(int n) {
    std::vector<double> p;
    for (int i = 0; i < n; ++i) p.push_back(0.037 + 0.31 * i + 1e-3 * i * i);
    return p;
}

} // namespace

TEST(Period, CoboundarySolvesEquations) {
    const cplx s(0.7, 2.0);
    for (int q = 3; q <= 8; ++q) {
        auto ps = make_period_samples(q, s, coboundary(s), sample_points(40));
        EXPECT_EQ(ps.parity, Parity::odd);
        EXPECT_LT(slow_residual(ps, PeriodEquation::funceq), 1e-12) << "q=" << q;
        auto odd_eq = q % 2 ? PeriodEquation::mod4 : PeriodEquation::mod2;
        auto even_eq = q % 2 ? PeriodEquation::mod3 : PeriodEquation::mod1;
        EXPECT_LT(slow_residual(ps, odd_eq), 1e-12) << "q=" << q;
        EXPECT_GT(slow_residual(ps, even_eq), 1.0) << "q=" << q;
    }
}

TEST(Period, GenericFunctionIsNotASolution) {
    const cplx s(0.5, 9.0);
    RealFunction psi = [](double t) { return cplx(1.0 / (1.0 + t * t)); };
    auto ps = make_period_samples(4, s, psi, sample_points(10));
    EXPECT_EQ(ps.parity, Parity::none);
    EXPECT_GT(slow_residual(ps, PeriodEquation::funceq), 1e-3);
}

TEST(Period, EquationParityDomain) {
    const cplx s(0.7, 2.0);
    EXPECT_THROW(slow_residual_at(3, s, coboundary(s), PeriodEquation::mod1, 2.0), DomainError);
    EXPECT_THROW(slow_residual_at(4, s, coboundary(s), PeriodEquation::mod3, 2.0), DomainError);
    EXPECT_EQ(parse_equation("mod3"), PeriodEquation::mod3);
    EXPECT_THROW(parse_equation("mod9"), ModeError);
}

TEST(Period, SamplesAvoidEndpoints) {
    const cplx s(0.7, 2.0);
    EXPECT_THROW(make_period_samples(3, s, coboundary(s), {1.0}), DomainError);
    EXPECT_THROW(make_period_samples(3, s, coboundary(s), {-0.5}), DomainError);
    EXPECT_NO_THROW(make_period_samples(3, s, coboundary(s), {1.0 + 1e-6}));
}

TEST(Period, ParityPartsRecombine) {
    const cplx s(0.6, 3.0);
    RealFunction psi = [](double t) { return cplx(std::exp(-t), t); };
    auto e = parity_part(s, psi, +1), o = parity_part(s, psi, -1);
    for (double t : {0.3, 1.7, 4.2}) EXPECT_LT(std::abs(e(t) + o(t) - psi(t)), 1e-14);
    auto ps = make_period_samples(5, s, e, sample_points(12));
    EXPECT_EQ(ps.parity, Parity::even);
}

TEST(Period, NegativeSideTransport) {
    const cplx s(0.6, 4.0);
    RealFunction psi = [](double t) { return cplx(1.0 / (1.0 + t), 0.2 * t / (1.0 + t * t)); };
    for (int q : {3, 4, 6})
        for (double t : {-0.3, -1.4, -5.0}) EXPECT_LT(negative_side_check(q, s, psi, t).gap(), 1e-11) << q << " " << t;
    EXPECT_THROW(negative_side_check(3, s, psi, 0.5), DomainError);
}

TEST(Period, AsymptoticsOfTestFunction) {
    // (1 + (t-1)^2)^{-s} - (t^2 + (1+t)^2)^{-s}: C0 = 2^{-s} - 1 = -D0, C1 = D1 = s 2^{-s} + 2s
    const cplx s(0.5, 3.0);
    RealFunction psi = [s](double t) {
        return std::exp(-s * std::log(1.0 + (t - 1) * (t - 1))) - std::exp(-s * std::log(t * t + (1 + t) * (1 + t)));
    };
    auto f = fit_asymptotics(s, psi);
    cplx c0 = std::exp(-s * std::log(2.0)) - 1.0, c1 = s * std::exp(-s * std::log(2.0)) + 2.0 * s;
    EXPECT_LT(std::abs(f.C0 - c0), 1e-8);
    EXPECT_LT(std::abs(f.D0 + c0), 1e-8);
    EXPECT_LT(std::abs(f.C1 - c1), 1e-4);
    EXPECT_LT(std::abs(f.D1 - c1), 1e-4);
    EXPECT_LT(f.mismatch0, 1e-8);
}

TEST(Period, ExtensionReproducesExactSolution) {
    const cplx s(0.7, 2.0);
    std::mt19937 rng(5);
    for (int q = 3; q <= 7; ++q) {
        auto ext = extend_from_fundamental(q, s, coboundary(s), 12, Parity::odd);
        std::uniform_real_distribution<double> u(1.0, ext.upper());
        double worst = 0.0;
        for (int i = 0; i < 400; ++i) {
            double x = u(rng);
            worst = std::max(worst, std::abs(ext(x) - coboundary(s)(x)));
        }
        EXPECT_LT(worst, 1e-12) << "q=" << q;
        EXPECT_GT(ext.containment_checks(), 0u);
    }
}

TEST(Period, ExtensionRejectsBadInput) {
    const cplx s(0.7, 2.0);
    EXPECT_THROW(extend_from_fundamental(3, s, coboundary(s), 2, Parity::none), DomainError);
    EXPECT_THROW(extend_from_fundamental(3, s, coboundary(s), -1, Parity::odd), DomainError);
}

TEST(Period, TabulatedFunctionRange) {
    std::vector<double> t;
    std::vector<cplx> v;
    for (int i = 0; i <= 50; ++i) {
        t.push_back(1.0 + i / 50.0);
        v.push_back(cplx(std::sin(t.back()), std::cos(t.back())));
    }
    auto f = tabulated_function(t, v);
    EXPECT_LT(std::abs(f(1.333) - cplx(std::sin(1.333), std::cos(1.333))), 1e-7);
    EXPECT_THROW(f(2.5), DomainError);
    EXPECT_THROW(tabulated_function({1.0, 2.0}, {1.0, 2.0}), DomainError);
}

TEST(NullVector, PlantedKernel) {
    Eigen::MatrixXcd B = Eigen::MatrixXcd::Random(8, 8);
    Eigen::VectorXcd k = Eigen::VectorXcd::Random(8);
    k.normalize();
    B -= (B * k) * k.adjoint();
    auto nv = null_vector(B);
    EXPECT_LT(nv.sigma_min, 1e-13);
    EXPECT_NEAR(std::abs(nv.v.dot(k)), 1.0, 1e-12);
    EXPECT_GT(nv.sigma_next, 1e-3);
}

TEST(Eigenfunction, OddZeroQ3) {
    const cplx s(0.5, 9.533695261319862);
    auto fe = extract_eigenfunction(3, s, Symmetry::minus, 24);
    EXPECT_LT(fe.residual, 1e-8);
    EXPECT_LT(fe.decay.rho, 0.8);
    EXPECT_FALSE(fe.multiplicity_warning);
    TransferOperator op(3, s);
    for (double x : {-0.6, -0.1, 0.25, 0.7}) EXPECT_LT(fast_eigen_residual(op, fe, x), 1e-6) << x;
    // f_1(z) = -f_2(-z) on the odd subspace
    EXPECT_LT(std::abs(fe.at(0.3) + fe.at(-0.3)), 1e-10);
}

TEST(Eigenfunction, ValuesConvergeInOrder) {
    const cplx s(0.5, 9.533695261319862);
    auto a = extract_eigenfunction(3, s, Symmetry::minus, 24);
    auto b = extract_eigenfunction(3, s, Symmetry::minus, 32);
    for (double x : {-0.5, 0.0, 0.4}) EXPECT_LT(std::abs(a.at(x) - b.at(x)), 1e-8 * std::abs(b.at(x)));
}

TEST(Eigenfunction, DeterminationOnOverlapQ5) {
    auto fe = extract_eigenfunction(5, cplx(0.5, 6.47369975), Symmetry::minus, 24);
    EXPECT_LT(fe.residual, 1e-8);
    EXPECT_LT(fe.determination_residual, 1e-6);
}
