#pragma once

#include <complex>
#include <cstddef>
#include <functional>

namespace mixterm {

/// Clamp a requested thread count to [1, hardware_concurrency].
int resolve_threads(int requested);

/// Run fn(lo, hi) over a fixed partition of [0, n). The partition depends only
/// on n, never on the thread count, and every task writes disjoint state, so
/// results are bit-identical for any `threads`.
void parallel_for(std::size_t n, int threads,
                  const std::function<void(std::size_t, std::size_t)>& fn);

/// Deterministic sum of a_i: fixed-size chunks summed independently, partials
/// combined in index order. Independent of thread count by construction.
double chunked_sum(const double* a, std::size_t n, int threads = 1);

/// Deterministic sum of |a_i|^e over a complex array (e > 0).
double chunked_abs_pow_sum(const std::complex<double>* a, std::size_t n, double e,
                           int threads = 1);

}  // namespace mixterm
