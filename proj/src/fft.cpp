#include "mixterm/fft.hpp"

#include <cmath>
#include <stdexcept>

#include "mixterm/parallel.hpp"

namespace mixterm {

namespace {

void bit_reverse(Coeff* a, std::size_t n) {
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
}

// Butterflies of one stage for groups whose first element lies in [lo, hi).
// Twiddles are re-anchored with std::polar every 64 steps to bound drift while
// avoiding a length-n/2 table.
void stage(Coeff* a, std::size_t n, std::size_t len, int sign, std::size_t lo,
           std::size_t hi) {
  (void)n;
  constexpr std::size_t kAnchor = 64;
  const std::size_t half = len / 2;
  const double base = sign * kTwoPi / static_cast<double>(len);
  const Coeff wstep = std::polar(1.0, base);
  for (std::size_t start = lo; start < hi; start += len) {
    Coeff w{1.0, 0.0};
    for (std::size_t j = 0; j < half; ++j) {
      if (j % kAnchor == 0) w = std::polar(1.0, base * static_cast<double>(j));
      Coeff u = a[start + j];
      Coeff v = a[start + j + half] * w;
      a[start + j] = u + v;
      a[start + j + half] = u - v;
      w *= wstep;
    }
  }
}

}  // namespace

void fft_inplace(Coeff* a, std::size_t n, int sign, int threads) {
  if (n == 0) return;
  if ((n & (n - 1)) != 0) throw std::invalid_argument("fft: length must be a power of two");
  if (n == 1) return;
  bit_reverse(a, n);
  for (std::size_t len = 2; len <= n; len <<= 1) {
    std::size_t groups = n / len;
    if (groups >= 2) {
      parallel_for(groups, threads, [&](std::size_t glo, std::size_t ghi) {
        stage(a, n, len, sign, glo * len, ghi * len);
      });
    } else {
      // Single group: split the inner butterfly range instead. Anchors sit at
      // absolute multiples of 64 and each slice replays the recurrence from
      // the last anchor below it, so the rounding path of w is identical for
      // every partition of the range.
      const std::size_t half = len / 2;
      const double base = sign * kTwoPi / static_cast<double>(len);
      parallel_for(half, threads, [&](std::size_t jlo, std::size_t jhi) {
        const Coeff wstep = std::polar(1.0, base);
        const std::size_t anchor = jlo & ~std::size_t{63};
        Coeff w = std::polar(1.0, base * static_cast<double>(anchor));
        for (std::size_t j = anchor; j < jlo; ++j) w *= wstep;
        for (std::size_t j = jlo; j < jhi; ++j) {
          if (j % 64 == 0) w = std::polar(1.0, base * static_cast<double>(j));
          Coeff u = a[j];
          Coeff v = a[j + half] * w;
          a[j] = u + v;
          a[j + half] = u - v;
          w *= wstep;
        }
      });
    }
  }
}

void fft_axis(GridFunction& g, int axis, int sign, int threads) {
  const GridShape& sh = g.shape();
  const int n = sh.n[axis];
  const std::size_t total = g.total();
  const std::size_t lines = total / static_cast<std::size_t>(n);

  // Stride of `axis` in the axis-1-contiguous layout.
  std::size_t stride = 1;
  for (int a = 0; a < axis; ++a) stride *= static_cast<std::size_t>(sh.n[a]);

  Coeff* data = g.data();
  if (stride == 1) {
    parallel_for(lines, threads, [&](std::size_t lo, std::size_t hi) {
      for (std::size_t l = lo; l < hi; ++l)
        fft_inplace(data + l * static_cast<std::size_t>(n), static_cast<std::size_t>(n),
                    sign, 1);
    });
    return;
  }
  parallel_for(lines, threads, [&](std::size_t lo, std::size_t hi) {
    std::vector<Coeff> scratch(static_cast<std::size_t>(n));
    for (std::size_t l = lo; l < hi; ++l) {
      // Line l: decompose l into (inner, outer) around the axis.
      std::size_t inner = l % stride;
      std::size_t outer = l / stride;
      std::size_t baseIdx = inner + outer * stride * static_cast<std::size_t>(n);
      for (int i = 0; i < n; ++i)
        scratch[static_cast<std::size_t>(i)] = data[baseIdx + static_cast<std::size_t>(i) * stride];
      fft_inplace(scratch.data(), static_cast<std::size_t>(n), sign, 1);
      for (int i = 0; i < n; ++i)
        data[baseIdx + static_cast<std::size_t>(i) * stride] = scratch[static_cast<std::size_t>(i)];
    }
  });
}

void fft_all_axes(GridFunction& g, int sign, int threads) {
  for (int a = 0; a < g.dims(); ++a) fft_axis(g, a, sign, threads);
}

}  // namespace mixterm
