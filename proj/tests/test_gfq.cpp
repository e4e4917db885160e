#include <gtest/gtest.h>

#include <map>
#include <random>

#include <jordanlab/gfq.hpp>

using namespace jordanlab;

namespace {

std::shared_ptr<const FiniteField> field(int q) { return std::make_shared<FiniteField>(q); }

MatrixGFq from_rows(int q, const std::vector<std::vector<int>>& rows) {
    MatrixGFq a(static_cast<int>(rows.size()), field(q), true);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows.size(); ++j) a.set(static_cast<int>(i), static_cast<int>(j), rows[i][j]);
    return a;
}

}  // namespace

TEST(FiniteField, AxiomsExhaustive) {
    for (int q : {2, 3, 4, 5, 7, 8, 9, 11, 13, 16}) {
        const FiniteField f(q);
        EXPECT_EQ(static_cast<int>(std::pow(f.characteristic(), f.degree()) + 0.5), q);
        for (int a = 0; a < q; ++a) {
            EXPECT_EQ(f.add(a, 0), a);
            EXPECT_EQ(f.mul(a, 1), a);
            EXPECT_EQ(f.add(a, f.neg(a)), 0);
            if (a) EXPECT_EQ(f.mul(a, f.inv(a)), 1) << "q=" << q << " a=" << a;
            for (int b = 0; b < q; ++b) {
                EXPECT_EQ(f.add(a, b), f.add(b, a));
                EXPECT_EQ(f.mul(a, b), f.mul(b, a));
                for (int c = 0; c < q; ++c) {
                    ASSERT_EQ(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    ASSERT_EQ(f.mul(a, f.mul(b, c)), f.mul(f.mul(a, b), c));
                    ASSERT_EQ(f.add(a, f.add(b, c)), f.add(f.add(a, b), c));
                }
            }
        }
    }
}

TEST(FiniteField, RejectsNonPrimePowers) {
    EXPECT_THROW(FiniteField(6), std::invalid_argument);
    EXPECT_THROW(FiniteField(1), std::invalid_argument);
    EXPECT_THROW(FiniteField(512), std::invalid_argument);
    EXPECT_NO_THROW(FiniteField(256));
    EXPECT_NO_THROW(FiniteField(243));
}

TEST(Rank, Examples) {
    EXPECT_EQ(rank(MatrixGFq(4, field(2))), 0);
    const auto a = from_rows(2, {{0, 1, 0}, {0, 0, 1}, {0, 0, 0}});
    EXPECT_EQ(rank(a), 2);
    EXPECT_EQ(rank_dense(a), 2);
}

TEST(Rank, BitPathMatchesDensePath) {
    std::mt19937_64 rng(11);
    const auto f2 = field(2);
    std::uniform_int_distribution<int> dim(1, 64);
    for (int trial = 0; trial < 1000; ++trial) {
        const int n = dim(rng);
        MatrixGFq a(n, f2);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) a.set(i, j, static_cast<int>(rng() & (trial % 3 == 0 ? 1 : (rng() & 1))));
        ASSERT_EQ(rank(a), rank_dense(a));
    }
}

TEST(JordanType, Examples) {
    EXPECT_EQ(jordan_type(MatrixGFq(4, field(3), true)), (Partition{1, 1, 1, 1}));
    EXPECT_EQ(jordan_type(from_rows(2, {{0, 1, 0}, {0, 0, 1}, {0, 0, 0}})), Partition{3});
    EXPECT_EQ(jordan_type(from_rows(2, {{0, 0, 1}, {0, 0, 0}, {0, 0, 0}})), (Partition{2, 1}));
}

TEST(JordanType, RejectsNonNilpotent) {
    MatrixGFq a(2, field(2));
    a.set(0, 0, 1);
    EXPECT_THROW(jordan_type(a), std::invalid_argument);
}

TEST(Enumeration, Counts) {
    for (auto [n, q, expected] : {std::tuple{2, 2, 2}, {3, 2, 8}, {3, 3, 27}, {1, 5, 1}}) {
        int count = 0;
        enumerate_strict_upper(n, field(q), [&](const MatrixGFq&) { ++count; });
        EXPECT_EQ(count, expected);
    }
    EXPECT_THROW(enumerate_strict_upper(8, field(2), [](const MatrixGFq&) {}), EnumerationRefused);
}

TEST(Enumeration, ThreeByThreeDistribution) {
    std::map<Partition, int> counts;
    enumerate_strict_upper(3, field(2), [&](const MatrixGFq& a) { ++counts[jordan_type(a)]; });
    EXPECT_EQ(counts[(Partition{1, 1, 1})], 1);
    EXPECT_EQ(counts[(Partition{2, 1})], 5);
    EXPECT_EQ(counts[Partition{3}], 2);
}

TEST(Enumeration, JordanTypeInvariants) {
    for (int q : {2, 3})
        for (int n = 1; n <= (q == 2 ? 5 : 4); ++n)
            enumerate_strict_upper(n, field(q), [&](const MatrixGFq& a) {
                const Partition j = jordan_type(a);
                ASSERT_EQ(j.size(), n);
                ASSERT_EQ(conjugate(j)[1], n - rank(a));
                ASSERT_EQ(jordan_type_incremental(a), j);
            });
}

TEST(JordanType, IncrementalMatchesRanks) {
    std::mt19937_64 rng(5);
    for (int q : {2, 3, 4, 5}) {
        const auto f = field(q);
        for (int trial = 0; trial < 200; ++trial) {
            const int n = 1 + static_cast<int>(rng() % 40);
            auto a = sample_strict_upper(n, f, rng);
            // sparsify some draws so that long chains appear
            if (trial % 2)
                for (int i = 0; i < n; ++i)
                    for (int j = i + 1; j < n; ++j)
                        if (rng() % 4) a.set(i, j, 0);
            const Partition expected = jordan_type(a);
            ASSERT_EQ(jordan_type_incremental(a), expected);
            if (q == 2) ASSERT_EQ(jordan_type_incremental(BitMatrix::from(a)), expected);
        }
    }
}

TEST(JordanType, IncrementalBitPathOnLargeMatrices) {
    std::mt19937_64 rng(17);
    for (int n : {65, 130, 200}) {
        const BitMatrix a = sample_strict_upper_bits(n, rng);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j <= i; ++j) ASSERT_FALSE(a.get(i, j));
        const Partition j = jordan_type_incremental(a);
        EXPECT_EQ(j.size(), n);
        const auto cols = leading_columns(a, 3);
        EXPECT_EQ(leading_columns(j, 3), cols);
    }
}

TEST(Sampling, DeterministicAndStrict) {
    const auto f = field(3);
    std::mt19937_64 r1(99), r2(99);
    const auto a = sample_strict_upper(6, f, r1);
    const auto b = sample_strict_upper(6, f, r2);
    EXPECT_EQ(a, b);
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j <= i; ++j) EXPECT_EQ(a.at(i, j), 0);
    std::mt19937_64 r3(1);
    EXPECT_TRUE(sample_strict_upper(1, f, r3).is_zero());
}

TEST(Sampling, UniformOverThreeByThree) {
    const auto f = field(2);
    std::mt19937_64 rng(2024);
    std::map<std::vector<int>, int> counts;
    const int draws = 100000;
    for (int s = 0; s < draws; ++s) {
        const auto a = sample_strict_upper(3, f, rng);
        ++counts[{a.at(0, 1), a.at(0, 2), a.at(1, 2)}];
    }
    ASSERT_EQ(counts.size(), 8u);
    double chi2 = 0.0;
    for (const auto& [k, c] : counts) chi2 += (c - draws / 8.0) * (c - draws / 8.0) / (draws / 8.0);
    EXPECT_LT(chi2, 24.3);  // 7 degrees of freedom, p = 0.001
    std::mt19937_64 rb(3);
    std::map<std::uint64_t, int> bits;
    for (int s = 0; s < draws; ++s) ++bits[sample_strict_upper_bits(3, rb).row(0)[0] | (sample_strict_upper_bits(3, rb).row(1)[0] << 8)];
    EXPECT_EQ(bits.size(), 8u);
}

TEST(Dump, OneLinePerRow) {
    std::ostringstream os;
    dump(os, from_rows(3, {{0, 2, 1}, {0, 0, 2}, {0, 0, 0}}));
    EXPECT_EQ(os.str(), "0 2 1\n0 0 2\n0 0 0\n");
}
