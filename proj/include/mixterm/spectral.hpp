#pragma once

#include <cstdint>
#include <vector>

#include "mixterm/types.hpp"

namespace mixterm {

/// Thrown when a grid cannot represent a spectrum alias-free (n_j <= 2*maxFreq_j).
class BandLimitViolation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Evaluate f(x) = sum_k a_k e^{i<k,x>} on the grid. Requires n_j > 2*maxFreq_j.
GridFunction synthesize(const Spectrum& s, const GridShape& shape, int threads = 1);

/// Fourier coefficients a_k = (prod n_j)^{-1} sum_x f(x) e^{-i<k,x>} for all
/// |k_j| < n_j/2. Coefficients with modulus below dropTol * max modulus are dropped.
Spectrum analyze(const GridFunction& g, int threads = 1, double dropTol = 1e-13);

/// Dyadic block index: 0 for k = 0, else 1 + floor(log2 max_j |k_j|).
int block_of(const FreqVec& f);

/// |rho(s)| = (2^{s+1}-1)^m - (2^s-1)^m for s >= 1; 1 for s = 0.
std::uint64_t block_cardinality(int s, int dims);

/// Enumerate rho(s) in lexicographic order. Throws std::length_error when the
/// block is too large to materialize.
std::vector<FreqVec> block_indices(int s, int dims);

/// Restriction of s to the dyadic block rho(s).
Spectrum block_project(const Spectrum& sp, int s);

/// Largest non-empty block index (-1 for the empty spectrum).
int max_block(const Spectrum& sp);

/// Smallest power-of-two grid (per axis >= 4) with n_j >= factor * maxFreq_j.
GridShape grid_for(const Spectrum& sp, int factor);

/// sum |a_k|^2 over the support.
double coeff_l2_sq(const Spectrum& sp);

/// s minus the modes of a (frequencies in a but not s are ignored).
Spectrum spectrum_subtract(const Spectrum& s, const Spectrum& a);

/// Restriction of s to a frequency set.
Spectrum restrict_to(const Spectrum& s, const FreqSet& omega);

}  // namespace mixterm
