#ifndef SEMGP_PARALLEL_HPP
#define SEMGP_PARALLEL_HPP

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace semgp {

// Resolves 0 to the hardware concurrency.
inline auto resolve_workers(std::size_t workers) -> std::size_t
{
    if (workers == 0) {
        workers = std::max<std::size_t>(1, std::thread::hardware_concurrency());
    }
    return workers;
}

// Runs fn(i) for i in [0, n) over contiguous blocks. fn must only write to
// state owned by index i.
template <typename Fn>
void parallel_for(std::size_t n, std::size_t workers, Fn&& fn)
{
    workers = std::min(resolve_workers(workers), n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) {
            fn(i);
        }
        return;
    }
    std::exception_ptr failure;
    std::mutex failure_mutex;
    {
        std::vector<std::jthread> threads;
        threads.reserve(workers);
        auto const block = (n + workers - 1) / workers;
        for (std::size_t w = 0; w < workers; ++w) {
            auto const begin = w * block;
            auto const end = std::min(n, begin + block);
            if (begin >= end) {
                break;
            }
            threads.emplace_back([&, begin, end] {
                try {
                    for (std::size_t i = begin; i < end; ++i) {
                        fn(i);
                    }
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure) {
                        failure = std::current_exception();
                    }
                }
            });
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
}

} // namespace semgp

#endif
