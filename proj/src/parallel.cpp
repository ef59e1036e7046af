#include "mixterm/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <thread>
#include <vector>

namespace mixterm {

int resolve_threads(int requested) {
  if (requested <= 0) {
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
  }
  // Honor explicit requests beyond the core count: oversubscription is cheap
  // and lets thread-count-independence be exercised on any machine.
  return std::min(requested, 256);
}

void parallel_for(std::size_t n, int threads,
                  const std::function<void(std::size_t, std::size_t)>& fn) {
  if (n == 0) return;
  threads = resolve_threads(threads);
  if (threads == 1 || n < 1024) {
    fn(0, n);
    return;
  }
  // Partition depends only on n: a fixed number of equal slices handed to a
  // pool of `threads` workers round-robin.
  const std::size_t slices = 64;
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(threads));
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&, t]() {
      for (std::size_t s = static_cast<std::size_t>(t); s < slices;
           s += static_cast<std::size_t>(threads)) {
        std::size_t lo = n * s / slices;
        std::size_t hi = n * (s + 1) / slices;
        if (lo < hi) fn(lo, hi);
      }
    });
  }
  for (auto& th : pool) th.join();
}

namespace {

constexpr std::size_t kChunk = 4096;

// Combine per-chunk partials in index order; chunk boundaries are fixed, so the
// value is independent of how chunks were assigned to threads.
double combine(const std::vector<double>& partials) {
  double acc = 0.0;
  for (double v : partials) acc += v;
  return acc;
}

}  // namespace

double chunked_sum(const double* a, std::size_t n, int threads) {
  if (n == 0) return 0.0;
  std::size_t chunks = (n + kChunk - 1) / kChunk;
  std::vector<double> partials(chunks, 0.0);
  parallel_for(chunks, threads, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t c = lo; c < hi; ++c) {
      std::size_t b = c * kChunk, e = std::min(n, b + kChunk);
      double s = 0.0;
      for (std::size_t i = b; i < e; ++i) s += a[i];
      partials[c] = s;
    }
  });
  return combine(partials);
}

double chunked_abs_pow_sum(const std::complex<double>* a, std::size_t n, double e,
                           int threads) {
  if (n == 0) return 0.0;
  std::size_t chunks = (n + kChunk - 1) / kChunk;
  std::vector<double> partials(chunks, 0.0);
  const bool isFour = e == 4.0;
  const bool isTwo = e == 2.0;
  parallel_for(chunks, threads, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t c = lo; c < hi; ++c) {
      std::size_t b = c * kChunk, ee = std::min(n, b + kChunk);
      double s = 0.0;
      if (isTwo) {
        for (std::size_t i = b; i < ee; ++i) s += std::norm(a[i]);
      } else if (isFour) {
        for (std::size_t i = b; i < ee; ++i) {
          double t = std::norm(a[i]);
          s += t * t;
        }
      } else {
        for (std::size_t i = b; i < ee; ++i) s += std::pow(std::abs(a[i]), e);
      }
      partials[c] = s;
    }
  });
  return combine(partials);
}

}  // namespace mixterm
