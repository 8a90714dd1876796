#include "knfr/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

namespace knfr {

namespace {
std::atomic<int> g_max_threads{0};
thread_local bool t_in_parallel = false;

int resolve_threads() {
    int n = g_max_threads.load();
    if (n > 0) return n;
    if (const char* env = std::getenv("NFR_THREADS")) {
        int v = std::atoi(env);
        if (v > 0) return v;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}
}  // namespace

void set_max_threads(int n) { g_max_threads.store(n); }

int max_threads() { return resolve_threads(); }

void parallel_for(std::size_t count, const std::function<void(std::size_t, std::size_t)>& body) {
    if (count == 0) return;
    int nthreads = resolve_threads();
    if (t_in_parallel || nthreads <= 1 || count == 1) {
        body(0, count);
        return;
    }
    std::size_t n = static_cast<std::size_t>(nthreads);
    if (n > count) n = count;
    std::size_t chunk = (count + n - 1) / n;
    std::vector<std::thread> workers;
    workers.reserve(n);
    for (std::size_t w = 0; w < n; ++w) {
        std::size_t lo = w * chunk;
        std::size_t hi = std::min(count, lo + chunk);
        if (lo >= hi) break;
        workers.emplace_back([&, lo, hi] {
            t_in_parallel = true;
            body(lo, hi);
            t_in_parallel = false;
        });
    }
    for (auto& t : workers) t.join();
}

}  // namespace knfr
