#pragma once

#include <atomic>
#include <cstddef>
#include <future>
#include <vector>

namespace xygibbs::detail {

/// Parallelism cap from XYGIBBS_THREADS (default 1, clamped to hardware).
unsigned thread_cap();

/// Runs fn(i) for i in [0, count). With a cap above one the indices are
/// consumed by worker tasks; callers store results by index so the output
/// never depends on scheduling.
template <class Fn>
void run_indexed(std::size_t count, Fn&& fn) {
    const unsigned cap = thread_cap();
    if (cap <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1))
            fn(i);
    };
    std::vector<std::future<void>> tasks;
    const unsigned n = cap < count ? cap : static_cast<unsigned>(count);
    tasks.reserve(n - 1);
    for (unsigned t = 1; t < n; ++t)
        tasks.push_back(std::async(std::launch::async, worker));
    worker();
    for (auto& t : tasks) t.get();
}

}  // namespace xygibbs::detail
