#pragma once

#include "lspec/common.hpp"

#include <functional>

namespace lspec {

/// Runs task(0..n_tasks-1) on up to n_threads workers. Tasks must touch only
/// their own output slots; completion order never changes results. The
/// lowest-index exception is rethrown after all workers drain (abort-all).
void parallel_for(int n_tasks, int n_threads, const std::function<void(int)>& task);

struct Aggregate {
    VectorXd mean;
    VectorXd std_error; // sample stderr; zero when n == 1
};

/// Columnwise mean and standard error over equally-sized rows, accumulated
/// in index order regardless of how the rows were produced.
Aggregate aggregate_rows(const std::vector<VectorXd>& rows);

} // namespace lspec
