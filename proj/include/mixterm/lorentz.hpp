#pragma once

#include <vector>

#include "mixterm/types.hpp"

namespace mixterm {

/// One axis of a mixed Lorentz norm. Domain: 1 < p < inf, 0 < theta < inf
/// (the p = 1 and theta = inf endpoints are excluded).
struct LorentzExponents {
  double p = 2.0;
  double theta = 2.0;

  void validate() const;
};

/// Non-increasing rearrangement of the moduli (descending sort).
std::vector<double> rearrange(std::vector<double> moduli);

/// Lorentz functional of a step function on [0, 2pi) given by n equal cells:
/// { sum_i g*_i^theta (p/theta) (t_{i+1}^{theta/p} - t_i^{theta/p}) }^{1/theta},
/// t_i = i * 2pi/n. Exact piecewise-power quadrature, no endpoint issues at t=0.
double lorentz_1d(const std::vector<double>& moduli, const LorentzExponents& e);

/// Iterated Lorentz norm, axis 1 innermost. exps.size() must equal g.dims().
double mixed_lorentz(const GridFunction& g, const std::vector<LorentzExponents>& exps,
                     int threads = 1);

/// Iterated plain Lebesgue norm (independent of the Lorentz code path; used as
/// a cross-check oracle for p = theta).
double mixed_lebesgue(const GridFunction& g, const std::vector<double>& p,
                      int threads = 1);

}  // namespace mixterm
