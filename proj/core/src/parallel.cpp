#include "prandtl/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace prandtl {

namespace {
std::atomic<int> g_override{0};

int env_threads() {
    if (const char* s = std::getenv("PRANDTL_THREADS")) {
        try {
            const int n = std::stoi(s);
            if (n > 0) return n;
        } catch (const std::exception&) {
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}
}  // namespace

int thread_count() {
    const int o = g_override.load();
    return o > 0 ? o : env_threads();
}

void set_thread_count(int n) { g_override.store(std::max(0, n)); }

void parallel_for(std::size_t begin, std::size_t end, const std::function<void(std::size_t)>& body) {
    if (end <= begin) return;
    const std::size_t n = end - begin;
    const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(thread_count()), n);
    if (workers <= 1) {
        for (std::size_t k = begin; k < end; ++k) body(k);
        return;
    }
    std::vector<std::exception_ptr> errors(workers);
    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            const std::size_t lo = begin + n * w / workers;
            const std::size_t hi = begin + n * (w + 1) / workers;
            pool.emplace_back([&, lo, hi, w] {
                try {
                    for (std::size_t k = lo; k < hi; ++k) body(k);
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        }
    }
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

}  // namespace prandtl
