#include <gtest/gtest.h>

#include <jordanlab/partition.hpp>
#include <jordanlab/pmf.hpp>
#include <jordanlab/qseries.hpp>

using namespace jordanlab;

TEST(Partition, ConjugateOfFigureShape) {
    EXPECT_EQ(conjugate(Partition{5, 2, 2, 1}), (Partition{4, 3, 1, 1, 1}));
    EXPECT_EQ(conjugate(Partition{}), Partition{});
    EXPECT_EQ(conjugate(Partition{3}), (Partition{1, 1, 1}));
}

TEST(Partition, ConjugateIsInvolution) {
    for (int n = 0; n <= 12; ++n)
        for (const auto& p : partitions_of(n)) {
            EXPECT_EQ(conjugate(conjugate(p)), p);
            EXPECT_EQ(conjugate(p).size(), n);
        }
}

TEST(Partition, RejectsIncreasingParts) {
    EXPECT_THROW(Partition({1, 2}), std::invalid_argument);
    EXPECT_THROW(Partition({2, -1}), std::invalid_argument);
    EXPECT_EQ(Partition({2, 0, 0}), Partition{2});
}

TEST(Partition, Multiplicity) {
    EXPECT_EQ(multiplicity(Partition{5, 2, 2, 1}, 2), 2);
    EXPECT_EQ(multiplicity(Partition{}, 4), 0);
    EXPECT_EQ(multiplicity(Partition{3, 3, 3}, 3), 3);
    EXPECT_THROW(multiplicity(Partition{1}, 0), std::invalid_argument);
}

TEST(Partition, BlocksRoundTrip) {
    const Partition p{4, 4, 2, 1, 1, 1};
    const auto b = p.blocks();
    ASSERT_EQ(b.size(), 3u);
    EXPECT_EQ(b[0].value, 4);
    EXPECT_EQ(b[2].count, 3);
    EXPECT_EQ(Partition::from_blocks(b), p);
}

TEST(Partition, CountsMatchPartitionNumbers) {
    const int expected[] = {1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42};
    for (int n = 0; n <= 10; ++n) EXPECT_EQ(partitions_of(n).size(), static_cast<std::size_t>(expected[n]));
}

TEST(Interlacing, Examples) {
    EXPECT_TRUE(interlaces(Partition{2, 1}, Partition{3, 1}));
    EXPECT_FALSE(interlaces(Partition{3}, Partition{2, 1}));
    EXPECT_TRUE(interlaces(Partition{}, Partition{5}));
}

TEST(Interlacing, SignatureEnumerationMatchesPredicate) {
    const Signature lambda{3, 1, -1};
    int count = 0;
    for_each_interlacing(lambda, [&](const Signature& mu) {
        EXPECT_EQ(mu.k(), 2);
        EXPECT_TRUE(interlaces(mu, lambda));
        ++count;
    });
    EXPECT_EQ(count, 3 * 3);
}

TEST(Interlacing, PartitionEnumerationIsHorizontalStrips) {
    const Partition lambda{3, 2, 2};
    int count = 0;
    for_each_interlacing(lambda, [&](const Partition& mu) {
        EXPECT_TRUE(interlaces(mu, lambda));
        ++count;
    });
    // mu_1 in [2,3], mu_2 = 2, mu_3 in [0,2]
    EXPECT_EQ(count, 2 * 1 * 3);
}

TEST(Signature, ShiftPreservesOrder) {
    const Signature s{2, 2, -1};
    EXPECT_EQ(s.shifted(3), (Signature{5, 5, 2}));
    EXPECT_THROW(Signature({0, 1}), std::invalid_argument);
}

TEST(QSeries, FinitePochhammer) {
    const auto h = exact_fraction(1, 2);
    EXPECT_EQ(q_pochhammer(h, h, 2), exact_fraction(3, 8));
    EXPECT_EQ(q_pochhammer(ExactScalar(7), h, 0), ExactScalar(1));
}

TEST(QSeries, InfinitePochhammerMatchesLongPartial) {
    const auto inf = q_pochhammer_inf(0.5, 0.5, 1e-17);
    EXPECT_NEAR(inf.value, q_pochhammer(0.5, 0.5, 64), 1e-15);
    EXPECT_LT(inf.error_bound, 1e-17);
    EXPECT_THROW(q_pochhammer_inf(0.5, 1.0, 1e-10), std::invalid_argument);
}

TEST(QSeries, Binomial) {
    const auto t = exact_fraction(1, 3);
    EXPECT_EQ(q_binomial(3, 1, t), ExactScalar(1 + t + t * t));
    EXPECT_EQ(q_binomial(4, 2, exact_fraction(1, 2)), exact_fraction(35, 16));
    EXPECT_EQ(q_binomial(5, 7, t), ExactScalar(0));
    // Pascal-type recurrence [n,k] = [n-1,k-1] + t^k [n-1,k]
    for (int n = 1; n <= 9; ++n)
        for (int k = 0; k <= n; ++k)
            EXPECT_EQ(q_binomial(n, k, t), ExactScalar(q_binomial(n - 1, k - 1, t) + ipow(t, k) * q_binomial(n - 1, k, t)));
}

TEST(Pmf, DinfExamples) {
    Pmf<int> a, b, c;
    a.add(0, 0.6);
    a.add(1, 0.4);
    b.add(0, 0.5);
    b.add(1, 0.5);
    c.add(7, 1.0);
    EXPECT_NEAR(dinf(a, b), 0.1, 1e-15);
    EXPECT_EQ(dinf(a, a), 0.0);
    Pmf<int> d;
    d.add(8, 1.0);
    EXPECT_EQ(dinf(c, d), 1.0);
}
