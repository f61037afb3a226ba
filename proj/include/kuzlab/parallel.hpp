#pragma once
// Deterministic chunked work distribution. Chunk boundaries depend only on
// the item count, never on the worker count, so a fixed-order reduction over
// per-chunk results is bitwise reproducible for any number of workers.

#include "kuzlab/core.hpp"

#include <functional>

namespace kuzlab {

inline constexpr u64 parallel_chunk = 512;

inline u64 chunk_count(u64 count) {
    return (count + parallel_chunk - 1) / parallel_chunk;
}

// fn(chunk, lo, hi) over half-open item ranges [lo, hi); chunk indices are
// dense in [0, chunk_count(count))
void run_chunks(u64 count, int workers,
                const std::function<void(u64 chunk, u64 lo, u64 hi)>& fn);

} // namespace kuzlab
