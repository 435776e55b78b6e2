#include "semihilbert/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace semihilbert {

std::size_t thread_cap() {
    static const std::size_t cap = [] {
        std::size_t hw = std::thread::hardware_concurrency();
        if (hw == 0) hw = 1;
        hw = std::min<std::size_t>(hw, 64);
        if (const char* env = std::getenv("SEMIHILBERT_THREADS")) {
            const long v = std::strtol(env, nullptr, 10);
            if (v >= 1) hw = std::min<std::size_t>(hw, static_cast<std::size_t>(v));
            if (v == 1) hw = 1;
        }
        return hw;
    }();
    return cap;
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn) {
    const std::size_t workers = std::min(thread_cap(), count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;

    auto body = [&]() {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= count) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
                return;
            }
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(body);
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

} // namespace semihilbert
