// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the hueforge project.

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <vector>

#include <gtest/gtest.h>

#include <hueforge/parallel.hpp>

using namespace hueforge;

namespace {

class ThreadCountGuard
{
public:
    ThreadCountGuard() : saved_(parallel::thread_count()) {}
    ~ThreadCountGuard() { parallel::set_thread_count(saved_); }

private:
    std::size_t saved_;
};

} // namespace

TEST(ForRanges, CoversEveryIndexOnce)
{
    ThreadCountGuard guard;
    for (std::size_t threads : {1u, 3u, 8u}) {
        parallel::set_thread_count(threads);
        std::vector<std::atomic<int>> hits(1001);
        parallel::for_ranges(hits.size(), [&](std::size_t b, std::size_t e) {
            for (std::size_t i = b; i < e; ++i) {
                ++hits[i];
            }
        });
        for (const auto& h : hits) {
            ASSERT_EQ(h.load(), 1);
        }
    }
}

TEST(ForRanges, PropagatesExceptions)
{
    ThreadCountGuard guard;
    parallel::set_thread_count(4);
    EXPECT_THROW(parallel::for_each_index(100,
                                          [](std::size_t i) {
                                              if (i == 77) {
                                                  throw std::runtime_error("boom");
                                              }
                                          }),
                 std::runtime_error);
}

TEST(ForRanges, NestedCallsComplete)
{
    ThreadCountGuard guard;
    parallel::set_thread_count(4);
    std::atomic<int> total{0};
    parallel::for_each_index(8, [&](std::size_t) { parallel::for_each_index(10, [&](std::size_t) { ++total; }); });
    EXPECT_EQ(total.load(), 80);
}

TEST(DeterministicSum, IndependentOfThreadCount)
{
    ThreadCountGuard guard;
    auto term = [](std::size_t i) { return std::sin(static_cast<double>(i)) * 1e3 + 1e-7 * static_cast<double>(i); };
    parallel::set_thread_count(1);
    const double one = parallel::deterministic_sum(100003, term);
    for (std::size_t threads : {2u, 5u, 8u}) {
        parallel::set_thread_count(threads);
        EXPECT_EQ(parallel::deterministic_sum(100003, term), one);
    }
}

TEST(DeterministicSum, EmptyIsZero)
{
    EXPECT_EQ(parallel::deterministic_sum(0, [](std::size_t) { return 1.0; }), 0.0);
}

TEST(ThreadsFromEnv, ParsesPositiveIntegers)
{
    ::setenv("HUEFORGE_THREADS", "6", 1);
    EXPECT_EQ(parallel::threads_from_env(), 6u);
    ::setenv("HUEFORGE_THREADS", "six", 1);
    EXPECT_EQ(parallel::threads_from_env(), 0u);
    ::unsetenv("HUEFORGE_THREADS");
    EXPECT_EQ(parallel::threads_from_env(), 0u);
}

TEST(SetThreadCount, ClampsToOne)
{
    ThreadCountGuard guard;
    parallel::set_thread_count(0);
    EXPECT_EQ(parallel::thread_count(), 1u);
}
