#include "mixterm/besov.hpp"

#include <cmath>
#include <limits>

namespace mixterm {

void BesovParams::validate() const {
  if (axes.empty() || axes.size() > static_cast<std::size_t>(kMaxDims))
    throw std::invalid_argument("BesovParams: 1..4 axes required");
  for (const auto& e : axes) e.validate();
  if (!(r > 0.0) || !std::isfinite(r))
    throw std::domain_error("BesovParams: smoothness r must be positive and finite");
  if (!(tau > 0.0)) throw std::domain_error("BesovParams: tau must be positive");
}

std::vector<double> block_norm_profile(const Spectrum& sp,
                                       const std::vector<LorentzExponents>& exps,
                                       int oversample, int threads) {
  if (static_cast<int>(exps.size()) != sp.dims())
    throw std::invalid_argument("block_norm_profile: one exponent pair per axis");
  if (oversample < 4)
    throw std::invalid_argument("block_norm_profile: oversample >= 4 required");
  int top = max_block(sp);
  std::vector<double> profile(static_cast<std::size_t>(top + 1), 0.0);
  for (int s = 0; s <= top; ++s) {
    Spectrum block = block_project(sp, s);
    if (block.empty()) continue;
    GridShape sh = grid_for(block, oversample);
    GridFunction g = synthesize(block, sh, threads);
    profile[static_cast<std::size_t>(s)] = mixed_lorentz(g, exps, threads);
  }
  return profile;
}

double besov_seminorm(const Spectrum& sp, const BesovParams& params, int oversample,
                      int threads) {
  params.validate();
  std::vector<double> profile = block_norm_profile(sp, params.axes, oversample, threads);
  if (profile.empty()) return 0.0;
  if (std::isinf(params.tau)) {
    double best = 0.0;
    for (std::size_t s = 0; s < profile.size(); ++s)
      best = std::max(best, std::exp2(params.r * static_cast<double>(s)) * profile[s]);
    return best;
  }
  double acc = 0.0;
  for (std::size_t s = 0; s < profile.size(); ++s) {
    double term = std::exp2(params.r * static_cast<double>(s)) * profile[s];
    acc += std::pow(term, params.tau);
  }
  return std::pow(acc, 1.0 / params.tau);
}

Spectrum normalize_to_class(const Spectrum& sp, const BesovParams& params,
                            int oversample, int threads) {
  double c = besov_seminorm(sp, params, oversample, threads);
  if (c == 0.0)
    throw std::domain_error("normalize_to_class: zero spectrum has no normalization");
  Spectrum out = sp;
  out.scale(Coeff{1.0 / c, 0.0});
  return out;
}

}  // namespace mixterm
