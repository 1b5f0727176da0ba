#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <future>
#include <thread>
#include <vector>

namespace twocenter {

/// Calls f(i) for i in [0, n) on a small worker pool. The first exception is rethrown.
template <class F>
void parallel_for(std::size_t n, F&& f)
{
    const std::size_t workers = std::min<std::size_t>(n, std::max(1u, std::thread::hardware_concurrency()));
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) f(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::future<void>> jobs;
    for (std::size_t w = 0; w < workers; ++w) {
        jobs.push_back(std::async(std::launch::async, [&] {
            for (std::size_t i = next++; i < n; i = next++) f(i);
        }));
    }
    for (auto& j : jobs) j.get();
}

}  // namespace twocenter
