#include "ccov/rng.hpp"
#include "ccov/parallel.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

using namespace ccov;

TEST(Rng, StreamsAreReproducible) {
    Rng a = Rng::stream(42, 7);
    Rng b = Rng::stream(42, 7);
    for (int i = 0; i < 1000; ++i) ASSERT_EQ(a.next_u64(), b.next_u64());
}

TEST(Rng, StreamsDiffer) {
    Rng a = Rng::stream(42, 0);
    Rng b = Rng::stream(42, 1);
    Rng c = Rng::stream(43, 0);
    int equal_ab = 0, equal_ac = 0;
    for (int i = 0; i < 64; ++i) {
        const auto va = a.next_u64();
        equal_ab += (va == b.next_u64());
        equal_ac += (va == c.next_u64());
    }
    EXPECT_EQ(equal_ab, 0);
    EXPECT_EQ(equal_ac, 0);
}

TEST(Rng, Uniform01Range) {
    Rng r(5);
    for (int i = 0; i < 10000; ++i) {
        const double u = r.uniform01();
        ASSERT_GE(u, 0.0);
        ASSERT_LT(u, 1.0);
    }
    for (int i = 0; i < 10000; ++i) {
        const double u = r.uniform01_pos();
        ASSERT_GT(u, 0.0);
        ASSERT_LE(u, 1.0);
    }
}

TEST(Rng, UniformBelowBoundsAndErrors) {
    Rng r(11);
    for (int i = 0; i < 10000; ++i) ASSERT_LT(r.uniform_below(17), 17u);
    EXPECT_THROW(r.uniform_below(0), std::invalid_argument);
}

TEST(Rng, NormalMoments) {
    Rng r(123);
    const int n = 400000;
    double sum = 0, sumsq = 0, sum3 = 0;
    for (int i = 0; i < n; ++i) {
        const double x = r.normal();
        sum += x;
        sumsq += x * x;
        sum3 += x * x * x;
    }
    EXPECT_NEAR(sum / n, 0.0, 0.01);
    EXPECT_NEAR(sumsq / n, 1.0, 0.02);
    EXPECT_NEAR(sum3 / n, 0.0, 0.05);
}

TEST(Rng, ChoiceByCumulativeFrequencies) {
    Rng r(9);
    const std::vector<double> cumulative{0.2, 0.5, 1.0};  // weights 0.2, 0.3, 0.5
    int counts[3] = {0, 0, 0};
    const int n = 100000;
    for (int i = 0; i < n; ++i) ++counts[r.choice_by_cumulative(cumulative)];
    EXPECT_NEAR(counts[0] / double(n), 0.2, 0.01);
    EXPECT_NEAR(counts[1] / double(n), 0.3, 0.01);
    EXPECT_NEAR(counts[2] / double(n), 0.5, 0.01);
}

TEST(ParallelFor, ResultsIndependentOfThreadCount) {
    auto run = [](unsigned threads) {
        std::vector<double> out(257);
        parallel_for(out.size(), threads, [&](std::size_t i) {
            Rng r = Rng::stream(77, i);
            out[i] = r.normal() + r.uniform01();
        });
        return out;
    };
    const auto one = run(1);
    EXPECT_EQ(one, run(2));
    EXPECT_EQ(one, run(5));
    EXPECT_EQ(one, run(64));
}

TEST(ParallelFor, PropagatesExceptions) {
    EXPECT_THROW(parallel_for(10, 4,
                              [](std::size_t i) {
                                  if (i == 7) throw std::runtime_error("boom");
                              }),
                 std::runtime_error);
}
