#pragma once

#include "mixterm/types.hpp"

namespace mixterm {

/// In-place radix-2 complex FFT of length n (a power of two).
/// sign = -1: forward (e^{-i...}), sign = +1: inverse, both unnormalized.
void fft_inplace(Coeff* a, std::size_t n, int sign, int threads = 1);

/// Transform every 1-d line of `g` along `axis` (0-based), in place.
void fft_axis(GridFunction& g, int axis, int sign, int threads = 1);

/// Transform all axes (full multidimensional DFT), in place.
void fft_all_axes(GridFunction& g, int sign, int threads = 1);

}  // namespace mixterm
