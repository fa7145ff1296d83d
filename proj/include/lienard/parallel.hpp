#pragma once

#include <cstddef>
#include <exception>
#include <functional>
#include <vector>

namespace lienard {

/// Worker count: LIENARD_LAB_THREADS when set to a positive integer,
/// otherwise the hardware concurrency (at least 1).
int thread_limit();

/// Runs body(i) for i in [0, n) on up to thread_limit() threads. Calls made
/// from inside a worker run serially, so nested fan-outs never oversubscribe.
/// The first exception thrown by any body is rethrown after all workers join.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

/// Order-preserving map built on parallel_for.
template <class T, class Fn>
std::vector<T> parallel_map(std::size_t n, Fn&& fn) {
  std::vector<T> out(n);
  parallel_for(n, [&](std::size_t i) { out[i] = fn(i); });
  return out;
}

}  // namespace lienard
