// Copyright 2026 The csegeo authors.
// Distributed under the Apache License 2.0, see file LICENSE for details.

#include "cse/parallel.hpp"

#include <atomic>
#include <exception>
#include <thread>
#include <vector>

namespace cse {

std::size_t block_count(std::size_t n, std::size_t block_size) {
    if (n == 0) return 0;
    return (n + block_size - 1) / block_size;
}

void parallel_for_blocks(std::size_t n, std::size_t block_size,
                         const std::function<void(std::size_t, std::size_t, std::size_t)>& fn) {
    const std::size_t blocks = block_count(n, block_size);
    if (blocks == 0) return;

    const std::size_t hw = std::max<std::size_t>(1, std::thread::hardware_concurrency());
    const std::size_t workers = std::min(hw, blocks);

    if (workers == 1) {
        for (std::size_t b = 0; b < blocks; ++b)
            fn(b, b * block_size, std::min(n, (b + 1) * block_size));
        return;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::atomic<bool> failed{false};

    auto work = [&] {
        std::size_t b;
        while ((b = next.fetch_add(1)) < blocks) {
            if (failed.load()) return;
            try {
                fn(b, b * block_size, std::min(n, (b + 1) * block_size));
            } catch (...) {
                if (!failed.exchange(true)) error = std::current_exception();
                return;
            }
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(workers - 1);
    for (std::size_t t = 0; t + 1 < workers; ++t) pool.emplace_back(work);
    work();
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

} // namespace cse
