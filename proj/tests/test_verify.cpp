#include <gtest/gtest.h>

#include "hecke/verify.hpp"

using namespace hecke;

TEST(Suite, GatingInvariantsPass) {
    for (int q : {3, 4, 5}) {
        SuiteSettings set;
        set.M = 16;
        auto rep = run_invariant_suite(q, set);
        EXPECT_TRUE(rep.ok()) << "q=" << q;
        for (const auto& r : rep.results) {
            if (!r.informational) {
                EXPECT_TRUE(r.pass) << "q=" << q << " " << r.name << " " << r.detail;
            }
        }
    }
}

TEST(Suite, LiteralContractionRowsAreInformational) {
    SuiteSettings set;
    set.M = 12;
    auto rep = run_invariant_suite(6, set);
    int info = 0;
    for (const auto& r : rep.results)
        if (r.informational) {
            ++info;
            EXPECT_FALSE(r.pass);
        }
    EXPECT_EQ(info, 2);
    EXPECT_FALSE(rep.all_pass());
}

TEST(Suite, SameSeedSameReport) {
    SuiteSettings set;
    set.M = 12;
    set.seed = 42;
    auto a = run_invariant_suite(4, set), b = run_invariant_suite(4, set);
    ASSERT_EQ(a.results.size(), b.results.size());
    for (std::size_t i = 0; i < a.results.size(); ++i) {
        EXPECT_EQ(a.results[i].name, b.results[i].name);
        EXPECT_EQ(a.results[i].value, b.results[i].value);
    }
}

TEST(Suite, RejectsSmallQ) { EXPECT_THROW(run_invariant_suite(2), DomainError); }
