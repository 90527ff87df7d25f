#include "lspec/ensemble.hpp"

#include <atomic>
#include <cmath>
#include <thread>

namespace lspec {

void parallel_for(int n_tasks, int n_threads, const std::function<void(int)>& task) {
    if (n_tasks <= 0) return;
    n_threads = std::max(1, std::min(n_threads, n_tasks));
    if (n_threads == 1) {
        for (int i = 0; i < n_tasks; ++i) task(i);
        return;
    }
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(n_tasks));
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(n_threads));
    for (int w = 0; w < n_threads; ++w)
        pool.emplace_back([&] {
            for (int i = next.fetch_add(1); i < n_tasks; i = next.fetch_add(1)) {
                try {
                    task(i);
                } catch (...) {
                    errors[static_cast<std::size_t>(i)] = std::current_exception();
                }
            }
        });
    for (auto& t : pool) t.join();
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
}

Aggregate aggregate_rows(const std::vector<VectorXd>& rows) {
    if (rows.empty()) throw validation_error("aggregate_rows: no rows");
    const Eigen::Index cols = rows.front().size();
    for (const auto& r : rows)
        if (r.size() != cols) throw validation_error("aggregate_rows: ragged rows");

    Aggregate out;
    out.mean = VectorXd::Zero(cols);
    out.std_error = VectorXd::Zero(cols);
    for (const auto& r : rows) out.mean += r;
    out.mean /= static_cast<double>(rows.size());
    if (rows.size() > 1) {
        for (const auto& r : rows)
            out.std_error += (r - out.mean).cwiseAbs2();
        const double n = static_cast<double>(rows.size());
        out.std_error = (out.std_error / (n - 1.0) / n).cwiseSqrt();
    }
    return out;
}

} // namespace lspec
