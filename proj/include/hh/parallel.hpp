#pragma once

// Order-preserving parallel map over a vector of inputs.

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <type_traits>
#include <vector>

namespace hh {

inline unsigned default_threads()
{
    const unsigned n = std::thread::hardware_concurrency();
    return n == 0 ? 1 : n;
}

/// out[i] = fn(in[i]); workers pull indices from a shared counter, results
/// land in input order. The first exception thrown by any worker is rethrown.
template <class T, class Fn>
auto parallel_map(const std::vector<T>& in, Fn fn, unsigned threads = 1)
    -> std::vector<std::invoke_result_t<Fn, const T&>>
{
    using R = std::invoke_result_t<Fn, const T&>;
    std::vector<R> out(in.size());
    threads = std::max(1U, std::min<unsigned>(threads, static_cast<unsigned>(in.size())));
    if (threads <= 1) {
        for (std::size_t i = 0; i < in.size(); ++i)
            out[i] = fn(in[i]);
        return out;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= in.size())
                return;
            try {
                out[i] = fn(in[i]);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error)
                    error = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t)
        pool.emplace_back(worker);
    for (auto& th : pool)
        th.join();
    if (error)
        std::rethrow_exception(error);
    return out;
}

} // namespace hh
