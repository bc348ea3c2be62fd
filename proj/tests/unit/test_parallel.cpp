#include <doctest.h>

#include <atomic>
#include <stdexcept>
#include <vector>

#include "prandtl/parallel.hpp"

using namespace prandtl;

TEST_CASE("parallel_for visits every index once") {
    for (const int n : {1, 3, 8}) {
        set_thread_count(n);
        CHECK(thread_count() == n);
        std::vector<int> hits(1000, 0);
        parallel_for(0, hits.size(), [&](std::size_t k) { hits[k] += 1; });
        for (const int h : hits) CHECK(h == 1);
    }
    set_thread_count(0);
    CHECK(thread_count() >= 1);
}

TEST_CASE("parallel_for rethrows the lowest failing chunk") {
    set_thread_count(4);
    try {
        parallel_for(0, 100, [](std::size_t k) {
            if (k == 10) throw std::runtime_error("low");
            if (k == 90) throw std::runtime_error("high");
        });
        FAIL("no exception");
    } catch (const std::runtime_error& e) {
        CHECK(std::string(e.what()) == "low");
    }
    set_thread_count(0);
}

TEST_CASE("empty range") {
    std::atomic<int> calls{0};
    parallel_for(5, 5, [&](std::size_t) { ++calls; });
    CHECK(calls == 0);
}
