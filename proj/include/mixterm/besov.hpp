#pragma once

#include <vector>

#include "mixterm/lorentz.hpp"
#include "mixterm/spectral.hpp"

namespace mixterm {

/// Smoothness class parameters: per-axis Lorentz exponents, smoothness r > 0,
/// fine index tau in (0, inf]. tau = infinity selects the sup-type seminorm.
struct BesovParams {
  std::vector<LorentzExponents> axes;
  double r = 1.0;
  double tau = 1.0;

  int dims() const { return static_cast<int>(axes.size()); }
  void validate() const;
};

/// Per-block norms ||delta_s(f)||: entry s holds the mixed Lorentz norm of the
/// block projection, synthesized on grids of size >= oversample * 2^s per axis.
std::vector<double> block_norm_profile(const Spectrum& sp,
                                       const std::vector<LorentzExponents>& exps,
                                       int oversample = 4, int threads = 1);

/// ( sum_s (2^{sr} ||delta_s||)^tau )^{1/tau}; sup over s when tau = infinity.
double besov_seminorm(const Spectrum& sp, const BesovParams& params,
                      int oversample = 4, int threads = 1);

/// Scale sp so its seminorm becomes 1. Throws std::domain_error for the zero
/// spectrum.
Spectrum normalize_to_class(const Spectrum& sp, const BesovParams& params,
                            int oversample = 4, int threads = 1);

}  // namespace mixterm
