#include <gtest/gtest.h>

#include "hecke/determinant.hpp"
#include "hecke/zeta.hpp"

using namespace hecke;

namespace {

cplx det_at(int q, cplx s, Symmetry sym = Symmetry::full, int M = 24) {
    OperatorSettings set;
    set.M = M;
    return fredholm_det(TransferOperator(q, s, set).assemble(sym));
}

} // namespace

// frozen values; each was cross-checked against the Euler product within its tail bound
TEST(Determinant, FrozenValuesAtTwoAndThree) {
    EXPECT_NEAR(det_at(3, 2.0).real(), 0.953799597788, 1e-11);
    EXPECT_NEAR(det_at(3, 3.0).real(), 0.995266921804, 1e-11);
    EXPECT_NEAR(det_at(4, 2.0).real(), 0.943290290578, 1e-11);
    EXPECT_NEAR(det_at(5, 3.0).real(), 0.995610815016, 1e-11);
}

TEST(Determinant, AgreesWithEulerProductQ3) {
    auto pv = euler_product(3, 2.0, 12.0);
    cplx d = det_at(3, 2.0);
    EXPECT_LT(std::abs(d - pv.value) / std::abs(pv.value), pv.tail_bound);
}

TEST(Determinant, Factorization) {
    for (int q : {3, 4, 5, 6, 7})
        for (cplx s : {cplx(2.0), cplx(0.5, 5.0), cplx(0.7, 11.0)}) {
            cplx f = det_at(q, s, Symmetry::full, 16);
            cplx p = det_at(q, s, Symmetry::plus, 16);
            cplx m = det_at(q, s, Symmetry::minus, 16);
            EXPECT_LT(std::abs(f - p * m) / std::abs(f), 1e-8) << "q=" << q << " s=" << s;
        }
}

TEST(Determinant, SchwarzReflection) {
    for (cplx s : {cplx(0.5, 4.0), cplx(1.3, -7.5), cplx(0.2, 2.0)}) {
        cplx a = det_at(4, s, Symmetry::full, 16), b = det_at(4, std::conj(s), Symmetry::full, 16);
        EXPECT_LT(std::abs(a - std::conj(b)), 1e-12 * std::max(1.0, std::abs(a)));
    }
}

TEST(Determinant, RealOnRealAxis) {
    for (double s : {0.25, 0.75, 1.0, 3.0}) EXPECT_LT(std::abs(det_at(5, s, Symmetry::full, 16).imag()), 1e-9);
}

TEST(Determinant, TraceLogMatchesLU) {
    OperatorSettings set;
    set.M = 16;
    auto om = TransferOperator(4, 2.0, set).assemble(Symmetry::full);
    EXPECT_LT(std::abs(det_trace_log(om.A, 40) - fredholm_det(om)), 1e-13);
    EXPECT_EQ(fredholm_det(Eigen::MatrixXcd(0, 0)), cplx(1.0));
}

TEST(Trace, Q4SingleTermClosedForm) {
    const double l = 1.0 + std::sqrt(2.0);
    const double expected = std::pow(l, -4.0) / (1.0 - std::pow(l, -2.0));
    auto w = trace_by_words(4, 1, 2.0);
    EXPECT_EQ(w.terms, 1u);
    EXPECT_NEAR(w.value.real(), expected, 1e-15);
    EXPECT_NEAR(expected, 0.0355339059327, 1e-12);
    OperatorSettings set;
    auto om = TransferOperator(4, 2.0, set).assemble(Symmetry::full);
    EXPECT_NEAR(std::abs(trace_by_matrix(om, 1) - expected), 0.0, 1e-12);
}

TEST(Trace, Q3FirstTraceVanishes) {
    // no regular words of length one for q = 3
    EXPECT_EQ(trace_by_words(3, 1, 2.0).terms, 0u);
    OperatorSettings set;
    auto om = TransferOperator(3, 2.0, set).assemble(Symmetry::full);
    EXPECT_LT(std::abs(trace_by_matrix(om, 1)), 1e-14);
}

TEST(Trace, MatrixVersusWordsWithinBound) {
    OperatorSettings set;
    auto om = TransferOperator(3, 2.0, set).assemble(Symmetry::full);
    auto w = trace_by_words(3, 2, 2.0);
    EXPECT_LE(w.error_bound, 1e-8);
    EXPECT_LE(std::abs(trace_by_matrix(om, 2) - w.value), w.error_bound + 1e-12);
    EXPECT_NEAR(w.value.real(), 0.0929436511, 4e-9);
}

TEST(Trace, ThreadCountDoesNotChangeSum) {
    CutoffPolicy a, b;
    a.exponent_cap = b.exponent_cap = 64;
    b.threads = 4;
    EXPECT_EQ(trace_by_words(5, 2, cplx(1.5, 2.0), a).value, trace_by_words(5, 2, cplx(1.5, 2.0), b).value);
}

TEST(Trace, WordsRequireHalfPlane) { EXPECT_THROW(trace_by_words(3, 2, 0.5), ModeError); }

TEST(Scan, PlantedZeros) {
    const cplx z1(0.5, 3.3), z2(0.5, 4.1);
    DetFunction f = [&](cplx s) { return (s - z1) * (s - z2) * std::exp(0.1 * s); };
    auto sc = scan_function(f, f, 2.0, 5.0, 0.05);
    ASSERT_EQ(sc.zeros.size(), 2u);
    EXPECT_NEAR(sc.zeros[0].t, 3.3, 1e-8);
    EXPECT_NEAR(sc.zeros[1].t, 4.1, 1e-8);
    for (const auto& z : sc.zeros) {
        EXPECT_TRUE(z.validated);
        EXPECT_EQ(z.winding, 1);
    }
}

TEST(Scan, WindingCountsMultiplicity) {
    DetFunction f = [](cplx s) { return std::pow(s - cplx(0.5, 2.0), 2); };
    EXPECT_EQ(winding_number(f, cplx(0.5, 2.0), 0.01), 2);
    EXPECT_EQ(winding_number(f, cplx(0.5, 2.5), 0.01), 0);
}

TEST(Scan, FirstOddZeroQ3) {
    auto sc = scan_zeros(3, Symmetry::minus, 9.3, 9.8, 0.02, 24);
    ASSERT_EQ(sc.zeros.size(), 1u);
    EXPECT_TRUE(sc.zeros[0].validated);
    EXPECT_NEAR(sc.zeros[0].t, 9.53369526, 1e-7);
    EXPECT_LT(sc.zeros[0].stability, 1e-6);
}

TEST(Scan, InvalidInterval) { EXPECT_THROW(scan_function([](cplx s) { return s; }, [](cplx s) { return s; }, 2.0, 1.0, 0.1), DomainError); }
