#pragma once

#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

namespace thetashell {

// Static partition of [begin, end) over `jobs` threads. Callers write results
// into preallocated slots indexed by i, so the output order never depends on
// scheduling.
inline void parallel_for(int64_t begin, int64_t end, int jobs, const std::function<void(int64_t)>& fn) {
    if (end <= begin) return;
    if (jobs < 2 || end - begin < 2) {
        for (int64_t i = begin; i < end; ++i) fn(i);
        return;
    }
    int64_t span = end - begin;
    int workers = static_cast<int>(std::min<int64_t>(jobs, span));
    std::vector<std::thread> threads;
    threads.reserve(static_cast<size_t>(workers));
    for (int w = 0; w < workers; ++w) {
        int64_t lo = begin + span * w / workers;
        int64_t hi = begin + span * (w + 1) / workers;
        threads.emplace_back([lo, hi, &fn] {
            for (int64_t i = lo; i < hi; ++i) fn(i);
        });
    }
    for (auto& t : threads) t.join();
}

}  // namespace thetashell
