#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include <umbral/umbral.hpp>

#include "support/builders.hpp"

using namespace umbral;
using namespace umbral::test;

namespace {

SymPoly random_univariate(std::mt19937& rng) {
    std::uniform_int_distribution<int> nterms(1, 4), nfactors(1, 3), part(1, 2), coef(-5, 5);
    SymPoly p(1);
    const int t = nterms(rng);
    for (int i = 0; i < t; ++i) {
        std::vector<MultiIndex> factors;
        const int f = nfactors(rng);
        for (int j = 0; j < f; ++j)
            factors.push_back(MultiIndex::univariate(part(rng)));
        p.add_term(factors, CoefRat(NPoly(coef(rng)), np({1, 1})));
    }
    return p;
}

} // namespace

TEST(Expectation, SquaredPowerSumAtTwo) {
    const SymPoly s1sq = build1({{1, {1, 1}}});
    EXPECT_EQ(oracle::expectation(s1sq, 2), build1<MomentFamily>({{2, {2}}, {2, {1, 1}}}));
}

TEST(Expectation, KStatisticTwoAtThree) {
    EXPECT_EQ(oracle::expectation(k_statistic(2), 3), build1<MomentFamily>({{1, {2}}, {-1, {1, 1}}}));
}

TEST(Expectation, SampleMeanForAnyN) {
    const SymPoly mean = build1({{CoefRat(NPoly(1), NPoly::variable()), {1}}});
    for (int n = 1; n <= 8; ++n)
        EXPECT_EQ(oracle::expectation(mean, n), MomentPoly::symbol(mi({1})));
}

TEST(Expectation, Errors) {
    EXPECT_THROW(oracle::expectation(k_statistic(2), 1), PoleError);
    EXPECT_THROW(oracle::expectation(k_statistic(2), 0), DomainError);
    EXPECT_THROW(oracle::expectation(k_statistic(2), 9), ResourceError);
    EXPECT_THROW(oracle::expectation(k_statistic(7), 8), ResourceError);
    try {
        oracle::expectation(k_statistic(3), 2);
        FAIL();
    } catch (const PoleError& e) {
        EXPECT_EQ(e.minimum_n(), 3);
    }
}

TEST(Expectation, Linearity) {
    std::mt19937 rng(12);
    for (int trial = 0; trial < 40; ++trial) {
        const SymPoly a = random_univariate(rng), b = random_univariate(rng);
        for (int n : {1, 3, 5})
            EXPECT_EQ(oracle::expectation(a + b, n), oracle::expectation(a, n) + oracle::expectation(b, n));
    }
}

TEST(Expectation, InvariantUnderUnitRelabeling) {
    std::mt19937 rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        const SymPoly p = random_univariate(rng);
        const int n = 4;
        const auto raw = oracle::expand(p, n, {}, /*merge_exchangeable=*/false);
        std::vector<int> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        const MomentPoly relabeled = oracle::apply_expectation(oracle::relabel_units(raw, perm));
        EXPECT_EQ(relabeled, oracle::apply_expectation(raw));
        // and the merged expansion agrees with the raw one
        EXPECT_EQ(oracle::expectation(p, n), oracle::apply_expectation(raw));
    }
}

TEST(NumericCheck, StandardizedLawVariance) {
    oracle::MomentAssignment law{{mi({1}), 0}, {mi({2}), 1}};
    EXPECT_EQ(oracle::numeric_check(k_statistic(2), law, 4), 1);
}

TEST(NumericCheck, FactorizedLawKillsCovariance) {
    oracle::MomentAssignment law;
    const Rational b1(3, 2), b2(5, 7), c1(-2, 3), c2(4);
    law[mi({1, 0})] = b1;
    law[mi({2, 0})] = b2;
    law[mi({0, 1})] = c1;
    law[mi({0, 2})] = c2;
    law[mi({1, 1})] = b1 * c1;
    EXPECT_EQ(oracle::numeric_check(multivariate_k_statistic(mi({1, 1})), law, 3), 0);
}

TEST(NumericCheck, ZeroMomentsGiveZeroAndMissingSymbolsThrow) {
    oracle::MomentAssignment zeros{{mi({1}), 0}, {mi({2}), 0}, {mi({3}), 0}};
    EXPECT_EQ(oracle::numeric_check(k_statistic(3), zeros, 4), 0);
    oracle::MomentAssignment partial{{mi({1}), 0}};
    EXPECT_THROW(oracle::numeric_check(k_statistic(2), partial, 3), DomainError);
}

TEST(Certification, PointCountCoversDegreeBound) {
    const SymPoly k2 = k_statistic(2);
    const int points = oracle::certification_points(k2, cumulant_in_moments(2));
    EXPECT_GE(points, 3);
    // A biased estimator (divides by n instead of n-1) is caught.
    const SymPoly biased = build1({{CoefRat(NPoly(1), npow(1)), {2}}, {CoefRat(NPoly(-1), npow(2)), {1, 1}}});
    const auto cert = oracle::certify_unbiased(biased, cumulant_in_moments(2), 2);
    EXPECT_FALSE(cert.holds);
}
