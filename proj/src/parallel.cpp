#include "ntangled/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace ntangled {

namespace {

int g_thread_cap = 0; // 0 = resolve from env / hardware
thread_local bool t_inside_parallel = false;

int default_threads() {
    if (const char* env = std::getenv("NTANGLED_THREADS")) {
        int v = std::atoi(env);
        if (v > 0) {
            return v;
        }
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

} // namespace

void set_max_threads(int threads) {
    g_thread_cap = threads > 0 ? threads : 0;
}

int max_threads() {
    return g_thread_cap > 0 ? g_thread_cap : default_threads();
}

void parallel_for(size_t count, const std::function<void(size_t)>& fn) {
    if (count == 0) {
        return;
    }
    int workers = std::min<size_t>(max_threads(), count);
    if (workers <= 1 || t_inside_parallel) {
        for (size_t i = 0; i < count; ++i) {
            fn(i);
        }
        return;
    }

    std::atomic<size_t> next_chunk{0};
    // chunks much finer than the worker count so uneven work balances out
    size_t chunk = std::max<size_t>(1, count / (static_cast<size_t>(workers) * 64));
    std::exception_ptr error;
    std::mutex error_mutex;

    auto body = [&]() {
        t_inside_parallel = true;
        try {
            for (;;) {
                size_t begin = next_chunk.fetch_add(chunk);
                if (begin >= count) {
                    break;
                }
                size_t end = std::min(count, begin + chunk);
                for (size_t i = begin; i < end; ++i) {
                    fn(i);
                }
            }
        } catch (...) {
            std::lock_guard<std::mutex> lock(error_mutex);
            if (!error) {
                error = std::current_exception();
            }
        }
        t_inside_parallel = false;
    };

    std::vector<std::thread> pool;
    pool.reserve(workers - 1);
    for (int w = 1; w < workers; ++w) {
        pool.emplace_back(body);
    }
    body();
    for (auto& t : pool) {
        t.join();
    }
    if (error) {
        std::rethrow_exception(error);
    }
}

} // namespace ntangled
