// -*- c++ -*-
// Minimal index-parallel loop. Work item i writes only to slot i, so results
// are identical for any worker count.

#pragma once

#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace nlalign {

template <typename Fn>
void parallel_for(std::size_t n, int jobs, Fn&& fn) {
    if (jobs <= 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i)
            fn(i);
        return;
    }
    unsigned workers = static_cast<unsigned>(jobs);
    unsigned hw = std::thread::hardware_concurrency();
    if (hw != 0 && workers > hw)
        workers = hw;
    if (workers > n)
        workers = static_cast<unsigned>(n);
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (;;) {
                std::size_t i = next.fetch_add(1);
                if (i >= n)
                    return;
                fn(i);
            }
        });
    for (auto& t : pool)
        t.join();
}

}  // namespace nlalign
