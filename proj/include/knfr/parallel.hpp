#pragma once

#include <cstddef>
#include <functional>

namespace knfr {

// Thread cap shared by all parallel loops. Resolution order:
// set_max_threads() > NFR_THREADS env var > hardware concurrency.
void set_max_threads(int n);
int max_threads();

// Chunked parallel loop over [0, count). Each worker gets a contiguous
// range, so per-index writes are race-free and results do not depend on
// the thread count. Nested calls run serially in the caller's thread.
void parallel_for(std::size_t count, const std::function<void(std::size_t, std::size_t)>& body);

// Convenience: per-index variant.
template <class F>
void parallel_for_each(std::size_t count, F&& f) {
    parallel_for(count, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) f(i);
    });
}

}  // namespace knfr
