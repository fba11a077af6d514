#include <gtest/gtest.h>

#include <set>
#include <thread>

#include <umbral/combinatorics.hpp>

#include "support/brute_force.hpp"

using namespace umbral;

TEST(SetPartitions, ThreeIntoTwoInRgsOrder) {
    const auto ps = set_partitions(3, 2);
    ASSERT_EQ(ps.size(), 3u);
    EXPECT_EQ(ps[0].to_string(), "{1,2}{3}");
    EXPECT_EQ(ps[1].to_string(), "{1,3}{2}");
    EXPECT_EQ(ps[2].to_string(), "{1}{2,3}");
}

TEST(SetPartitions, AllSingletons) {
    for (int i = 1; i <= 6; ++i) {
        const auto ps = set_partitions(i, i);
        ASSERT_EQ(ps.size(), 1u);
        EXPECT_EQ(ps[0].block_count(), static_cast<std::size_t>(i));
        for (const auto& b : ps[0].blocks())
            EXPECT_EQ(b.size(), 1u);
    }
}

TEST(SetPartitions, FourIntoTwo) { EXPECT_EQ(set_partitions(4, 2).size(), 7u); }

TEST(SetPartitions, DomainErrors) {
    EXPECT_THROW(set_partitions(3, 4), DomainError);
    EXPECT_THROW(set_partitions(3, 0), DomainError);
    EXPECT_THROW(set_partitions(0, 0), DomainError);
    EXPECT_THROW(all_set_partitions(0), DomainError);
}

TEST(SetPartitions, CapAndOverride) {
    EXPECT_THROW(set_partitions(13, 12), ResourceError);
    EXPECT_EQ(set_partitions(13, 12, 13).size(), 78u); // C(13,2)
}

TEST(SetPartitions, AllCountsAreBellNumbers) {
    EXPECT_EQ(all_set_partitions(1).size(), 1u);
    EXPECT_EQ(all_set_partitions(3).size(), 5u);
    EXPECT_EQ(all_set_partitions(4).size(), 15u);
}

TEST(SetPartitions, CountsMatchStirlingAndBellRecurrences) {
    for (int i = 1; i <= 10; ++i) {
        Integer total = 0;
        for (int k = 1; k <= i; ++k) {
            long count = 0;
            for_each_rgs(i, k, [&](std::span<const int>, int) { ++count; });
            EXPECT_EQ(Integer(count), test::stirling2_recurrence(i, k)) << "i=" << i << " k=" << k;
            total += count;
        }
        EXPECT_EQ(total, test::bell_recurrence(i)) << "i=" << i;
    }
}

TEST(SetPartitions, EveryPartitionSatisfiesInvariantsAndIsUnique) {
    for (int i = 1; i <= 8; ++i) {
        std::set<std::string> seen;
        for (const auto& p : all_set_partitions(i)) {
            // Re-validating through the checked constructor.
            EXPECT_NO_THROW(SetPartition(p.blocks(), p.ground_size()));
            EXPECT_TRUE(seen.insert(p.to_string()).second) << p.to_string();
        }
    }
}

TEST(SetPartitions, RejectsMalformedBlocks) {
    EXPECT_THROW(SetPartition({{1, 2}, {2, 3}}, 3), DomainError);
    EXPECT_THROW(SetPartition({{1}, {3}}, 3), DomainError);
    EXPECT_THROW(SetPartition({{2}, {1}}, 2), DomainError);
    EXPECT_THROW(SetPartition({{1}, {}}, 1), DomainError);
    EXPECT_THROW(SetPartition({{2, 1}}, 2), DomainError);
}

TEST(SetPartitions, DeterministicAndReentrant) {
    const auto a = all_set_partitions(7);
    const auto b = all_set_partitions(7);
    EXPECT_EQ(a, b);

    std::vector<std::vector<SetPartition>> results(4);
    std::vector<std::thread> threads;
    for (std::size_t t = 0; t < results.size(); ++t)
        threads.emplace_back([&, t] { results[t] = all_set_partitions(7); });
    for (auto& th : threads)
        th.join();
    for (const auto& r : results)
        EXPECT_EQ(r, a);
}

TEST(BlockSignature, Examples) {
    EXPECT_EQ(block_size_signature(SetPartition({{1, 2}, {3}}, 3)), (std::vector<int>{2, 1}));
    EXPECT_EQ(block_size_signature(set_partitions(4, 4)[0]), (std::vector<int>{1, 1, 1, 1}));
    EXPECT_EQ(block_size_signature(SetPartition({{1, 2, 3}, {4, 5}}, 5)), (std::vector<int>{3, 2}));
}

TEST(IntegerPartitions, Examples) {
    const auto p3 = integer_partitions(3);
    ASSERT_EQ(p3.size(), 3u);
    EXPECT_EQ(p3[0].parts(), (std::vector<int>{3}));
    EXPECT_EQ(p3[1].parts(), (std::vector<int>{2, 1}));
    EXPECT_EQ(p3[2].parts(), (std::vector<int>{1, 1, 1}));
    EXPECT_EQ(integer_partitions(1).size(), 1u);
    EXPECT_EQ(integer_partitions(5).size(), 7u);
    EXPECT_THROW(integer_partitions(0), DomainError);
}

TEST(IntegerPartitions, MultiplicitiesAndWeights) {
    for (int m = 1; m <= 10; ++m)
        for (const auto& lambda : integer_partitions(m)) {
            EXPECT_EQ(lambda.weight(), m);
            int from_mult = 0;
            std::size_t count = 0;
            for (const auto& [part, r] : lambda.multiplicities()) {
                from_mult += part * r;
                count += static_cast<std::size_t>(r);
            }
            EXPECT_EQ(from_mult, m);
            EXPECT_EQ(count, lambda.length());
            EXPECT_TRUE(std::is_sorted(lambda.parts().rbegin(), lambda.parts().rend()));
        }
    EXPECT_EQ(IntPartition({1, 2, 1}).multiplicities(), (std::map<int, int>{{1, 2}, {2, 1}}));
}
