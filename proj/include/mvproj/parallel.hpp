#pragma once

#include <cstddef>
#include <functional>

namespace mvproj {

/// Worker count used when a call passes threads = 0. Initially the
/// hardware concurrency; MVPROJ_THREADS overrides it.
std::size_t default_threads();
void set_default_threads(std::size_t threads);

/// Runs body(i) for i in [0, n). Work is handed out in chunks from a shared
/// counter; results must be written to index-addressed storage. The first
/// exception thrown by any body is rethrown after all workers stop.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body,
                  std::size_t threads = 0);

}  // namespace mvproj
