// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the hueforge project.

#include "hueforge/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstdlib>
#include <cstring>
#include <exception>
#include <mutex>
#include <thread>

namespace hueforge::parallel {

namespace {

constexpr std::size_t kSumBlock = 4096;

// Set on pool threads; nested calls run inline on the calling worker.
thread_local bool t_in_worker = false;

std::size_t default_threads()
{
    if (auto n = threads_from_env(); n > 0) {
        return n;
    }
    return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

std::atomic<std::size_t>& thread_setting()
{
    static std::atomic<std::size_t> value{default_threads()};
    return value;
}

} // namespace

std::size_t threads_from_env()
{
    const char* raw = std::getenv("HUEFORGE_THREADS");
    if (raw == nullptr) {
        return 0;
    }
    std::size_t n = 0;
    auto [ptr, ec] = std::from_chars(raw, raw + std::strlen(raw), n);
    if (ec != std::errc{} || *ptr != '\0') {
        return 0;
    }
    return n;
}

std::size_t thread_count() { return thread_setting().load(); }

void set_thread_count(std::size_t n) { thread_setting().store(std::max<std::size_t>(1, n)); }

void for_ranges(std::size_t count, const std::function<void(std::size_t, std::size_t)>& fn)
{
    if (count == 0) {
        return;
    }
    const std::size_t workers = std::min(thread_count(), count);
    if (workers <= 1 || t_in_worker) {
        fn(0, count);
        return;
    }

    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    const std::size_t chunk = (count + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t begin = w * chunk;
        const std::size_t end = std::min(count, begin + chunk);
        if (begin >= end) {
            break;
        }
        pool.emplace_back([&, begin, end] {
            t_in_worker = true;
            try {
                fn(begin, end);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) {
                    failure = std::current_exception();
                }
            }
        });
    }
    pool.clear();
    if (failure) {
        std::rethrow_exception(failure);
    }
}

void for_each_index(std::size_t count, const std::function<void(std::size_t)>& fn)
{
    for_ranges(count, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            fn(i);
        }
    });
}

double deterministic_sum(std::size_t count, const std::function<double(std::size_t)>& term)
{
    const std::size_t blocks = (count + kSumBlock - 1) / kSumBlock;
    std::vector<double> partial(blocks, 0.0);
    for_each_index(blocks, [&](std::size_t blk) {
        const std::size_t begin = blk * kSumBlock;
        const std::size_t end = std::min(count, begin + kSumBlock);
        double s = 0.0;
        for (std::size_t i = begin; i < end; ++i) {
            s += term(i);
        }
        partial[blk] = s;
    });
    double total = 0.0;
    for (double p : partial) {
        total += p;
    }
    return total;
}

} // namespace hueforge::parallel
