// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the hueforge project.

#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace hueforge::parallel {

/// Worker count used by every parallel kernel. Initialized from the
/// HUEFORGE_THREADS environment variable, else hardware concurrency.
std::size_t thread_count();
void set_thread_count(std::size_t n);

/// Reads HUEFORGE_THREADS; returns 0 when unset or unparsable.
std::size_t threads_from_env();

/// Calls fn(begin, end) on disjoint contiguous index ranges covering
/// [0, count). Blocks until all ranges finish; rethrows the first exception.
/// A call made from inside a worker runs serially on that worker.
void for_ranges(std::size_t count, const std::function<void(std::size_t, std::size_t)>& fn);

/// Calls fn(i) for every i in [0, count).
void for_each_index(std::size_t count, const std::function<void(std::size_t)>& fn);

/// Sum of term(i) for i in [0, count). Partial sums are taken over fixed
/// blocks, so the result does not depend on the worker count.
double deterministic_sum(std::size_t count, const std::function<double(std::size_t)>& term);

} // namespace hueforge::parallel
