#include "hyperradial/parallel.hpp"

#include <doctest.h>

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <vector>

using namespace hyperradial;

TEST_CASE("parallel_for visits every index once")
{
    std::vector<std::atomic<int>> hits(257);
    parallel_for(hits.size(), [&](std::size_t i) { ++hits[i]; });
    for (const auto& h : hits) CHECK(h.load() == 1);
    parallel_for(0, [](std::size_t) { FAIL("no work expected"); });
}

TEST_CASE("parallel_for reports the lowest failing index")
{
    for (int repeat = 0; repeat < 20; ++repeat) {
        try {
            parallel_for(64, [](std::size_t i) {
                if (i % 7 == 3) throw std::runtime_error(std::to_string(i));
            });
            FAIL("expected an exception");
        }
        catch (const std::runtime_error& e) {
            CHECK(std::string(e.what()) == "3");
        }
    }
}

TEST_CASE("thread cap from the environment")
{
    ::setenv("HYPERRADIAL_THREADS", "3", 1);
    CHECK(max_threads() == 3);
    ::setenv("HYPERRADIAL_THREADS", "0", 1);
    CHECK(max_threads() >= 1);
    ::setenv("HYPERRADIAL_THREADS", "two", 1);
    CHECK(max_threads() >= 1);
    ::unsetenv("HYPERRADIAL_THREADS");
    CHECK(max_threads() >= 1);
}
