#include "planarmatch/parallel.hpp"

#include <atomic>

namespace planarmatch {

namespace {

std::atomic<int> worker_count{1};

}

int workerCount() noexcept {
    return worker_count.load(std::memory_order_relaxed);
}

void setWorkerCount(int workers) noexcept {
    worker_count.store(workers < 1 ? 1 : workers, std::memory_order_relaxed);
}

}
