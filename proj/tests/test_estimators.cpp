#include <gtest/gtest.h>

#include <thread>

#include <umbral/umbral.hpp>

#include "support/brute_force.hpp"
#include "support/builders.hpp"

using namespace umbral;
using namespace umbral::test;

TEST(KStatistic, FirstOrders) {
    EXPECT_EQ(k_statistic(1), build1({{CoefRat(NPoly(1), NPoly::variable()), {1}}}));
    EXPECT_EQ(k_statistic(2), build1({{over_ff(npow(1), 2), {2}}, {over_ff(-1, 2), {1, 1}}}));
    EXPECT_EQ(k_statistic(3), build1({{over_ff(npow(2), 3), {3}},
                                      {over_ff(np({0, -3}), 3), {1, 2}},
                                      {over_ff(2, 3), {1, 1, 1}}}));
    EXPECT_THROW(k_statistic(0), DomainError);
}

TEST(KStatistic, UnbiasedAtSeveralSampleSizes) {
    for (int r = 1; r <= 5; ++r)
        for (int n = r; n <= r + 2; ++n)
            EXPECT_EQ(oracle::expectation(k_statistic(r), n), cumulant_in_moments(r)) << r << "," << n;
}

TEST(KStatistic, UnbiasedForEverySampleSizeByCertification) {
    const oracle::Limits wide{6, 24};
    for (int r = 1; r <= 4; ++r) {
        const auto cert = oracle::certify_unbiased(k_statistic(r), cumulant_in_moments(r), r, wide);
        EXPECT_TRUE(cert.holds) << "r=" << r << " failing n=" << cert.failing_n;
    }
}

TEST(KStatistic, HomogeneousOfWeightR) {
    for (int r = 1; r <= 10; ++r) {
        const auto classes = weighted_degree_check(k_statistic(r));
        ASSERT_EQ(classes.size(), 1u);
        EXPECT_EQ(classes.begin()->first, r);
    }
}

TEST(KStatistic, CoefficientsAreIntegersOverFallingFactorial) {
    // Textbook shape: every term is an integer polynomial in n over (n)_r.
    for (int r = 1; r <= 8; ++r) {
        const SymPoly k = k_statistic(r);
        for (const auto& [key, c] : k.terms()) {
            const CoefRat scaled = c * CoefRat(falling_factorial(r));
            EXPECT_TRUE(scaled.denominator().is_one()) << r;
        }
    }
}

TEST(MultivariateK, BivariateTwoOne) {
    const SymPoly expected = build(2, {{over_ff(npow(2), 3), {mi({2, 1})}},
                                       {over_ff(np({0, -2}), 3), {mi({1, 0}), mi({1, 1})}},
                                       {over_ff(np({0, -1}), 3), {mi({2, 0}), mi({0, 1})}},
                                       {over_ff(2, 3), {mi({1, 0}), mi({1, 0}), mi({0, 1})}}});
    EXPECT_EQ(multivariate_k_statistic(mi({2, 1})), expected);
}

TEST(MultivariateK, Covariance) {
    EXPECT_EQ(multivariate_k_statistic(mi({1, 1})),
              build(2, {{over_ff(npow(1), 2), {mi({1, 1})}}, {over_ff(-1, 2), {mi({1, 0}), mi({0, 1})}}}));
}

TEST(MultivariateK, UnivariateSpecializationMatchesKStatistic) {
    for (int r = 1; r <= 6; ++r)
        EXPECT_EQ(multivariate_k_statistic(MultiIndex::univariate(r)), k_statistic(r)) << r;
}

TEST(MultivariateK, UnbiasedForJointCumulants) {
    for (const auto& idx : {mi({1, 1}), mi({2, 1}), mi({1, 2}), mi({2, 2}), mi({3, 1}), mi({1, 1, 1})}) {
        const int d = idx.total_degree();
        for (int n = d; n <= d + 1; ++n)
            EXPECT_EQ(oracle::expectation(multivariate_k_statistic(idx), n), cumulant_in_moments(idx))
                << idx.to_string() << " n=" << n;
    }
}

TEST(MultivariateK, Homogeneous) {
    for (const auto& idx : {mi({2, 1}), mi({2, 2}), mi({3, 2}), mi({1, 1, 1})}) {
        const auto classes = weighted_degree_check(multivariate_k_statistic(idx));
        ASSERT_EQ(classes.size(), 1u);
        EXPECT_EQ(classes.begin()->first, idx.total_degree());
    }
}

TEST(HStatistic, Examples) {
    EXPECT_TRUE(h_statistic(1).is_zero());
    EXPECT_EQ(h_statistic(2), k_statistic(2));
    EXPECT_EQ(h_statistic(3), k_statistic(3));
    EXPECT_NE(h_statistic(4), k_statistic(4));
    EXPECT_THROW(h_statistic(0), DomainError);
}

TEST(HStatistic, UnbiasedForCentralMoments) {
    for (int r = 1; r <= 5; ++r)
        for (int n = std::max(r, 1); n <= r + 2; ++n)
            EXPECT_EQ(oracle::expectation(h_statistic(r), n), central_moment_in_moments(r)) << r << "," << n;
}

TEST(CumulantInMoments, Examples) {
    EXPECT_EQ(cumulant_in_moments(1), build1<MomentFamily>({{1, {1}}}));
    EXPECT_EQ(cumulant_in_moments(2), build1<MomentFamily>({{1, {2}}, {-1, {1, 1}}}));
    EXPECT_EQ(cumulant_in_moments(4), build1<MomentFamily>({{1, {4}},
                                                            {-4, {1, 3}},
                                                            {-3, {2, 2}},
                                                            {12, {1, 1, 2}},
                                                            {-6, {1, 1, 1, 1}}}));
    EXPECT_THROW(cumulant_in_moments(0), DomainError);
}

TEST(BellPolynomial, Examples) {
    for (int i = 1; i <= 6; ++i) {
        EXPECT_EQ(bell_polynomial(i, i), build1<MomentFamily>({{1, std::vector<int>(static_cast<std::size_t>(i), 1)}}));
        EXPECT_EQ(bell_polynomial(i, 1), build1<MomentFamily>({{1, {i}}}));
    }
    EXPECT_EQ(bell_polynomial(3, 2), build1<MomentFamily>({{3, {1, 2}}}));
    EXPECT_THROW(bell_polynomial(2, 3), DomainError);
}

TEST(AugmentedToPowerSums, Examples) {
    EXPECT_EQ(augmented_to_power_sums(IntPartition({1, 1})), build1({{1, {1, 1}}, {-1, {2}}}));
    EXPECT_EQ(augmented_to_power_sums(IntPartition({2, 1})), build1({{1, {1, 2}}, {-1, {3}}}));
    EXPECT_EQ(augmented_to_power_sums(IntPartition({1, 1, 1})),
              build1({{1, {1, 1, 1}}, {-3, {1, 2}}, {2, {3}}}));
    EXPECT_THROW(augmented_to_power_sums(IntPartition()), DomainError);
}

TEST(AugmentedToPowerSums, MatchesInjectiveTupleSum) {
    for (int w = 1; w <= 5; ++w)
        for (const auto& lambda : integer_partitions(w)) {
            std::vector<MultiIndex> idx;
            for (int part : lambda.parts())
                idx.push_back(MultiIndex::univariate(part));
            EXPECT_EQ(to_x(augmented_to_power_sums(lambda), 4), augmented_x(4, idx)) << lambda.to_string();
        }
}

TEST(SymmetricBases, ElementaryExamples) {
    EXPECT_EQ(elementary_in_power_sums(1), build1({{1, {1}}}));
    EXPECT_EQ(elementary_in_power_sums(2), build1({{q(1, 2), {1, 1}}, {q(-1, 2), {2}}}));
    EXPECT_EQ(elementary_in_power_sums(3), build1({{q(1, 6), {1, 1, 1}}, {q(-1, 2), {1, 2}}, {q(1, 3), {3}}}));
    EXPECT_THROW(elementary_in_power_sums(0), DomainError);
}

TEST(SymmetricBases, CompleteExamples) {
    EXPECT_EQ(complete_in_power_sums(1), build1({{1, {1}}}));
    EXPECT_EQ(complete_in_power_sums(2), build1({{q(1, 2), {1, 1}}, {q(1, 2), {2}}}));
    EXPECT_EQ(complete_in_power_sums(3), build1({{q(1, 6), {1, 1, 1}}, {q(1, 2), {1, 2}}, {q(1, 3), {3}}}));
    EXPECT_THROW(complete_in_power_sums(0), DomainError);
}

TEST(SymmetricBases, MatchBruteForceExpansions) {
    for (int k = 1; k <= 5; ++k) {
        EXPECT_EQ(to_x(elementary_in_power_sums(k), 5), symmetric_x(5, k, false)) << k;
        EXPECT_EQ(to_x(complete_in_power_sums(k), 5), symmetric_x(5, k, true)) << k;
    }
}

TEST(SymmetricBases, NewtonIdentity) {
    for (int k = 1; k <= 6; ++k) {
        SymPoly total(1);
        for (int i = 0; i <= k; ++i) {
            const SymPoly e = i == 0 ? SymPoly::constant(1) : elementary_in_power_sums(i);
            const SymPoly h = i == k ? SymPoly::constant(1) : complete_in_power_sums(k - i);
            total += (i % 2 == 0 ? e : -e) * h;
        }
        EXPECT_TRUE(total.is_zero()) << k;
    }
}

TEST(MonomialInAugmented, Examples) {
    EXPECT_EQ(monomial_in_augmented(IntPartition({1, 1})).scale, Rational(1, 2));
    EXPECT_EQ(monomial_in_augmented(IntPartition({2})).scale, Rational(1));
    EXPECT_EQ(monomial_in_augmented(IntPartition({2, 2})).scale, Rational(1, 2));
    EXPECT_THROW(monomial_in_augmented(IntPartition()), DomainError);
    // m_(1,1) = e_2
    EXPECT_EQ(monomial_in_augmented(IntPartition({1, 1})).to_power_sums(), elementary_in_power_sums(2));
}

TEST(EstimatorSpec, Validation) {
    EXPECT_THROW(EstimatorSpec(EstimatorKind::k_statistic, {}), DomainError);
    EXPECT_THROW(EstimatorSpec(EstimatorKind::k_statistic, {mi({1, 1})}), DomainError);
    EXPECT_THROW(EstimatorSpec(EstimatorKind::multivariate_k, {mi({1}), mi({2})}), DomainError);
    EXPECT_THROW(EstimatorSpec(EstimatorKind::u_statistic, {mi({1}), mi({1, 0})}), ShapeError);
    EXPECT_FALSE(EstimatorSpec(EstimatorKind::k_statistic, {mi({10})}).cost_warning());
    EXPECT_TRUE(EstimatorSpec(EstimatorKind::k_statistic, {mi({11})}).cost_warning());
    EXPECT_TRUE(EstimatorSpec(EstimatorKind::multivariate_k, {mi({4, 3})}).cost_warning());
}

TEST(EstimatorCache, ConcurrentGenerationIsConsistent) {
    std::vector<SymPoly> results(6, SymPoly(2));
    std::vector<std::thread> threads;
    for (std::size_t t = 0; t < results.size(); ++t)
        threads.emplace_back([&, t] { results[t] = multivariate_k_statistic(mi({3, 2})); });
    for (auto& th : threads)
        th.join();
    for (const auto& r : results)
        EXPECT_EQ(r, results.front());
}

TEST(KStatistic, OrderTenIsExactAndHomogeneous) {
    const SymPoly k10 = k_statistic(10);
    EXPECT_EQ(k10.size(), 42u); // one term per partition of 10
    EXPECT_EQ(weighted_degree_check(k10).size(), 1u);
}
