#include "mixterm/lorentz.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mixterm/parallel.hpp"

namespace mixterm {

void LorentzExponents::validate() const {
  if (!(p > 1.0) || !std::isfinite(p))
    throw std::domain_error("Lorentz exponent p must satisfy 1 < p < inf");
  if (!(theta > 0.0) || !std::isfinite(theta))
    throw std::domain_error("Lorentz exponent theta must satisfy 0 < theta < inf");
}

std::vector<double> rearrange(std::vector<double> moduli) {
  std::sort(moduli.begin(), moduli.end(), std::greater<double>());
  return moduli;
}

namespace {

// { sum_i g_i^theta (p/theta)(t_{i+1}^{theta/p} - t_i^{theta/p}) }^{1/theta} for
// the descending step function g on n cells of total measure 2pi.
double step_quadrature(const double* sorted, std::size_t n, const LorentzExponents& e) {
  const double c = e.theta / e.p;
  const double cellPow = std::pow(kTwoPi / static_cast<double>(n), c);
  double acc = 0.0;
  double prev = 0.0;  // t_i^{theta/p}, accumulated in units of cell^{theta/p}
  for (std::size_t i = 0; i < n; ++i) {
    double next = std::pow(static_cast<double>(i + 1), c);
    double g = sorted[i];
    if (g == 0.0) break;  // descending: the rest contribute nothing
    acc += std::pow(g, e.theta) * (next - prev);
    prev = next;
  }
  return std::pow(acc * cellPow * (e.p / e.theta), 1.0 / e.theta);
}

double plain_power_mean(const double* vals, std::size_t n, double p, int threads) {
  std::vector<double> pows(n);
  parallel_for(n, threads, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) pows[i] = std::pow(vals[i], p);
  });
  double s = chunked_sum(pows.data(), n, threads);
  return std::pow(s * (kTwoPi / static_cast<double>(n)), 1.0 / p);
}

}  // namespace

double lorentz_1d(const std::vector<double>& moduli, const LorentzExponents& e) {
  e.validate();
  if (moduli.empty()) throw std::invalid_argument("lorentz_1d: empty sample vector");
  if (e.p == e.theta) {
    // Rearrangement-invariant reduction: identical to the plain L_p sum.
    return plain_power_mean(moduli.data(), moduli.size(), e.p, 1);
  }
  std::vector<double> sorted = rearrange(moduli);
  return step_quadrature(sorted.data(), sorted.size(), e);
}

namespace {

// One reduction pass: collapse the contiguous leading axis of length n,
// producing `lines` values. Fast path for p == theta skips the sort.
void reduce_axis(const std::vector<double>& in, std::vector<double>& out,
                 std::size_t n, const LorentzExponents& e, int threads) {
  const std::size_t lines = in.size() / n;
  out.resize(lines);
  const bool plain = (e.p == e.theta);
  parallel_for(lines, threads, [&](std::size_t lo, std::size_t hi) {
    std::vector<double> buf;
    for (std::size_t l = lo; l < hi; ++l) {
      const double* src = in.data() + l * n;
      if (plain) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += std::pow(src[i], e.p);
        out[l] = std::pow(s * (kTwoPi / static_cast<double>(n)), 1.0 / e.p);
      } else {
        buf.assign(src, src + n);
        std::sort(buf.begin(), buf.end(), std::greater<double>());
        out[l] = step_quadrature(buf.data(), n, e);
      }
    }
  });
}

}  // namespace

double mixed_lorentz(const GridFunction& g, const std::vector<LorentzExponents>& exps,
                     int threads) {
  if (static_cast<int>(exps.size()) != g.dims())
    throw std::invalid_argument("mixed_lorentz: one exponent pair per axis required");
  for (const auto& e : exps) e.validate();

  std::vector<double> cur(g.total());
  const Coeff* data = g.data();
  parallel_for(g.total(), threads, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) cur[i] = std::abs(data[i]);
  });

  std::vector<double> next;
  for (int a = 0; a < g.dims(); ++a) {
    // After each pass the next axis becomes the contiguous leading one.
    reduce_axis(cur, next, static_cast<std::size_t>(g.shape().n[a]), exps[a], threads);
    cur.swap(next);
  }
  return cur[0];
}

double mixed_lebesgue(const GridFunction& g, const std::vector<double>& p, int threads) {
  if (static_cast<int>(p.size()) != g.dims())
    throw std::invalid_argument("mixed_lebesgue: one exponent per axis required");
  for (double v : p)
    if (!(v >= 1.0) || !std::isfinite(v))
      throw std::domain_error("mixed_lebesgue: exponents must lie in [1, inf)");

  std::vector<double> cur(g.total());
  const Coeff* data = g.data();
  for (std::size_t i = 0; i < g.total(); ++i) cur[i] = std::abs(data[i]);

  std::vector<double> next;
  for (int a = 0; a < g.dims(); ++a) {
    const std::size_t n = static_cast<std::size_t>(g.shape().n[a]);
    const std::size_t lines = cur.size() / n;
    next.resize(lines);
    const double pa = p[static_cast<std::size_t>(a)];
    parallel_for(lines, threads, [&](std::size_t lo, std::size_t hi) {
      for (std::size_t l = lo; l < hi; ++l) {
        const double* src = cur.data() + l * n;
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += std::pow(src[i], pa);
        next[l] = std::pow(s * (kTwoPi / static_cast<double>(n)), 1.0 / pa);
      }
    });
    cur.swap(next);
  }
  return cur[0];
}

}  // namespace mixterm
