#include "hyperradial/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace hyperradial {

unsigned max_threads()
{
    if (const char* env = std::getenv("HYPERRADIAL_THREADS")) {
        try {
            std::size_t pos = 0;
            const long v = std::stol(env, &pos);
            if (pos == std::string(env).size() && v > 0) return static_cast<unsigned>(v);
        }
        catch (const std::exception&) {
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& task)
{
    const auto workers = std::min<std::size_t>(max_threads(), count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) task(i);
        return;
    }

    // Errors are kept per index so the one reported does not depend on scheduling.
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(count);
    auto worker = [&] {
        for (std::size_t i = next++; i < count; i = next++) {
            try {
                task(i);
            }
            catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };

    {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

} // namespace hyperradial
