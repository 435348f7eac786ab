#pragma once
#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

namespace hawkes {

// Runs fn(replica_index) for replica_index in [0, count) across `threads`
// workers.  Work is split by index, and each replica derives its randomness
// from its own index, so the output is identical for any thread count.
template <typename Fn>
void for_each_replica(std::int64_t count, int threads, Fn&& fn) {
    if (threads < 1) threads = 1;
    if (threads == 1 || count < 2) {
        for (std::int64_t i = 0; i < count; ++i) fn(i);
        return;
    }
    if (threads > count) threads = static_cast<int>(count);
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errs(static_cast<std::size_t>(threads));
    for (int w = 0; w < threads; ++w) {
        pool.emplace_back([&, w]() {
            try {
                for (std::int64_t i = w; i < count; i += threads) fn(i);
            } catch (...) {
                errs[static_cast<std::size_t>(w)] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errs)
        if (e) std::rethrow_exception(e);
}

}
