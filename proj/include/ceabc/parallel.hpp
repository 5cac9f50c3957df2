#pragma once

#include <cstddef>
#include <functional>

namespace ceabc {

// Runs fn(0..n-1) across up to `threads` workers. Callers own determinism by
// writing results into index-addressed slots; the pool guarantees only that
// every index runs exactly once and exceptions propagate (first one wins).
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn);

// Hardware concurrency with a sane floor of 1.
unsigned default_thread_count();

}  // namespace ceabc
