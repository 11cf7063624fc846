#pragma once

#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace cclab {

// Run fn(i) for i in [0, n) on up to `jobs` worker threads.  Tasks must be
// independent; the first exception thrown by any task is rethrown on the
// caller after all workers finish.
template <class Fn>
void parallel_for(int n, int jobs, Fn&& fn)
{
    if (jobs > n) jobs = n;
    if (jobs <= 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto work = [&] {
        while (true) {
            int i = next.fetch_add(1);
            if (i >= n) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
            }
        }
    };
    std::vector<std::thread> workers;
    for (int w = 0; w < jobs; ++w) workers.emplace_back(work);
    for (auto& t : workers) t.join();
    if (error) std::rethrow_exception(error);
}

} // namespace cclab
