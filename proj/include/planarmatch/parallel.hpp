#pragma once

#include <cstddef>
#include <exception>
#include <mutex>

#include <omp.h>

namespace planarmatch {

// Number of workers used by parallelFor and parallelInvoke. Worker count 1
// selects the plain serial loops that double as the reference
// implementation; anything larger routes through OpenMP. The value is
// process-global because it is an execution knob, never an algorithm input,
// and results must not depend on it.
int workerCount() noexcept;
void setWorkerCount(int workers) noexcept;

namespace detail {

// Records the exception raised by the smallest loop index, so that a
// parallel run reports the same failure the serial loop would have hit
// first. Loop bodies may only write to their own output slot, which makes
// discarding the later iterations safe.
class FirstException {
public:
    // Must be called from inside a catch block.
    void capture(std::size_t index) noexcept {
        std::lock_guard<std::mutex> hold(gate_);
        if (!stored_ || index < index_) {
            stored_ = std::current_exception();
            index_ = index;
        }
    }

    void rethrowIfSet() {
        if (stored_) std::rethrow_exception(stored_);
    }

private:
    std::mutex gate_;
    std::exception_ptr stored_;
    std::size_t index_ = 0;
};

}

template <class Body>
void parallelFor(std::size_t count, Body&& body) {
    const int workers = workerCount();
    if (workers <= 1 || omp_in_parallel()) {
        for (std::size_t index = 0; index < count; ++index) body(index);
        return;
    }
    detail::FirstException first;
#pragma omp parallel for num_threads(workers) schedule(static)
    for (std::size_t index = 0; index < count; ++index) {
        try {
            body(index);
        } catch (...) {
            first.capture(index);
        }
    }
    first.rethrowIfSet();
}

// Runs both branches, concurrently when workers permit. If both fail, the
// first branch's exception wins, matching serial order.
template <class BranchA, class BranchB>
void parallelInvoke(BranchA&& branchA, BranchB&& branchB) {
    if (workerCount() <= 1) {
        branchA();
        branchB();
        return;
    }
    std::exception_ptr errorA;
    std::exception_ptr errorB;
    auto runA = [&] {
        try {
            branchA();
        } catch (...) {
            errorA = std::current_exception();
        }
    };
    auto runB = [&] {
        try {
            branchB();
        } catch (...) {
            errorB = std::current_exception();
        }
    };
    if (omp_in_parallel()) {
#pragma omp task default(shared)
        runA();
        runB();
#pragma omp taskwait
    } else {
#pragma omp parallel num_threads(2)
        {
#pragma omp single
            {
#pragma omp task default(shared)
                runA();
                runB();
#pragma omp taskwait
            }
        }
    }
    if (errorA) std::rethrow_exception(errorA);
    if (errorB) std::rethrow_exception(errorB);
}

}
