#pragma once

#include <cstddef>
#include <functional>
#include <string>

namespace shellzeta {

// Number of worker threads: hardware concurrency capped by SHELLZETA_THREADS.
int worker_threads();

// Static partition of [0, n) across worker threads.  Each index writes only
// its own slot, so results are identical for any thread count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

// Shortest round-trip decimal representation; used for byte-stable output.
std::string format_double(double x);

}  // namespace shellzeta
