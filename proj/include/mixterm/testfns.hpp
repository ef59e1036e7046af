#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "mixterm/besov.hpp"

namespace mixterm {

/// Deterministic random source (std::mt19937_64, whose stream is pinned by the
/// standard, with hand-rolled distributions so values are bit-stable everywhere).
class SeededSampler {
 public:
  explicit SeededSampler(std::uint64_t seed) : seed_(seed), eng_(seed) {}

  std::uint64_t raw() { return eng_(); }
  double unit() { return static_cast<double>(raw() >> 11) * 0x1.0p-53; }
  double angle() { return unit() * kTwoPi; }
  int sign() { return (raw() & 1u) ? 1 : -1; }
  double gaussian();

  std::uint64_t seed() const { return seed_; }

  /// Independent per-block stream derived from this sampler's seed.
  SeededSampler forBlock(int s) const;

 private:
  std::uint64_t seed_;
  std::mt19937_64 eng_;
};

/// All harmonics of the cube max_j |k_j| <= 2^l with coefficient 1.
Spectrum dirichlet_cubic(int l, int dims);

/// sum_{s=1}^{n} sum_{k in rho(s), k_j >= 1} prod_j k_j^{-1} cos(k_j x_j),
/// expanded into exponentials (2^{-m} per sign pattern).
Spectrum g1(int n, int dims);

/// n^{-1} sum_{s=1}^{n} 2^{-s sum(1-1/p_j)} sum_{k in rho(s), k_j >= 1}
///   prod_j k_j^{-r/m} cos(k_j x_j).
Spectrum f3(int n, int dims, const std::vector<double>& p, double r);

/// Golay-Rudin-Shapiro signs on the window [2^{s-1}, 2^s), s >= 1.
std::vector<int> rudin_shapiro(int s);

/// 2^{-n(m/2+r)} sum_{s=1}^{n} prod_j R_s(x_j) where R_s is the sign polynomial
/// of rudin_shapiro(s) on the window.
Spectrum rudin_shapiro_product(int n, int dims, double r);

enum class BlockProfile {
  Flat,   // i.i.d. random phase per mode: all block L_p norms comparable
  Spiky,  // one random phase + random translation per block (modulated
          // Dirichlet run): saturates the L_q/L_p growth between metrics
};

/// Random class member: for s = 1..L draws a polynomial on rho(s) with the
/// requested block profile, then rescales each block so that
/// ||delta_s||_{p,theta} = 2^{-sr} exactly.
Spectrum lacunary_random(const BesovParams& params, int L, std::uint64_t seed,
                         BlockProfile profile = BlockProfile::Flat,
                         int oversample = 4, int threads = 1);

/// Band-limited noise: `count` distinct modes with |k_j| <= maxfreq, complex
/// gaussian coefficients. Test plumbing.
Spectrum random_spectrum(int dims, int maxfreq, int count, std::uint64_t seed);

}  // namespace mixterm
