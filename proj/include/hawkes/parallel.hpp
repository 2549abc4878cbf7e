#pragma once

#include <cstdint>
#include <thread>
#include <vector>

namespace hawkes {

// Replication-parallel driver. The body receives a replication index and writes
// only to slots owned by that index, so the worker count changes wall time and
// nothing else; reductions over the slot arrays use pairwise_sum.
template <typename Body>
void replicate(std::uint64_t reps, int workers, Body&& body) {
    if (workers < 1) workers = 1;
    if (workers == 1 || reps < 2) {
        for (std::uint64_t r = 0; r < reps; ++r) body(r);
        return;
    }
    const std::uint64_t block =
        (reps + static_cast<std::uint64_t>(workers) - 1) / workers;
    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        const std::uint64_t begin = block * static_cast<std::uint64_t>(w);
        const std::uint64_t end = std::min(reps, begin + block);
        if (begin >= end) break;
        threads.emplace_back([begin, end, &body] {
            for (std::uint64_t r = begin; r < end; ++r) body(r);
        });
    }
    for (auto& t : threads) t.join();
}

}  // namespace hawkes
