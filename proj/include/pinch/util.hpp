#pragma once

#include <functional>
#include <thread>
#include <vector>

namespace pinch {

/// Compensated (Kahan) accumulator; certificate terms a^-r span many orders
/// of magnitude.
class KahanSum {
public:
    void add(double x) {
        double y = x - comp_;
        double t = sum_ + y;
        comp_ = (t - sum_) - y;
        sum_ = t;
    }
    double value() const { return sum_; }

private:
    double sum_ = 0;
    double comp_ = 0;
};

/// Run fn(i) for i in [0, n), partitioned over up to `jobs` threads. Callers
/// write results into per-index slots, so the merged outcome is independent
/// of scheduling.
inline void parallel_for(int n, int jobs, const std::function<void(int)>& fn) {
    if (jobs <= 0) jobs = static_cast<int>(std::thread::hardware_concurrency());
    if (jobs < 1) jobs = 1;
    jobs = std::min(jobs, n);
    if (jobs <= 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> workers;
    std::atomic<int> next{0};
    for (int t = 0; t < jobs; ++t)
        workers.emplace_back([&] {
            for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
        });
    for (auto& w : workers) w.join();
}

}  // namespace pinch
