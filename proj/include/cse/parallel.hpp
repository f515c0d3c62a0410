// Copyright 2026 The csegeo authors.
// Distributed under the Apache License 2.0, see file LICENSE for details.

#pragma once

#include <cstddef>
#include <functional>

namespace cse {

// Runs fn(block_index, begin, end) over [0, n) split into fixed-size blocks.
// The block grid depends only on (n, block_size), never on the thread count,
// so outputs indexed by block are identical for any level of parallelism.
// Blocks write disjoint state; reductions combine per-block partials in block
// order afterwards.
void parallel_for_blocks(std::size_t n, std::size_t block_size,
                         const std::function<void(std::size_t, std::size_t, std::size_t)>& fn);

std::size_t block_count(std::size_t n, std::size_t block_size);

} // namespace cse
