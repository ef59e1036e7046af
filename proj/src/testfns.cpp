#include "mixterm/testfns.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

#include "mixterm/spectral.hpp"

namespace mixterm {

double SeededSampler::gaussian() {
  const double u1 = 1.0 - unit();  // (0, 1], keeps the log finite
  const double u2 = unit();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
}

SeededSampler SeededSampler::forBlock(int s) const {
  // splitmix64 of (seed, s): well-separated streams per block.
  std::uint64_t z = seed_ + 0x9e3779b97f4a7c15ull * (static_cast<std::uint64_t>(s) + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return SeededSampler(z ^ (z >> 31));
}

namespace {

void check_dims(int dims) {
  if (dims < 1 || dims > kMaxDims)
    throw std::invalid_argument("dims must be between 1 and 4");
}

// Walks the integer box [lo, hi]^dims, last axis fastest.
template <typename Fn>
void for_each_box(int dims, int lo, int hi, Fn&& fn) {
  if (hi < lo) return;
  FreqVec k{};
  k.dims = dims;
  for (int j = 0; j < dims; ++j) k.k[j] = lo;
  while (true) {
    fn(k);
    int axis = dims - 1;
    while (axis >= 0 && k.k[axis] == hi) k.k[axis--] = lo;
    if (axis < 0) break;
    ++k.k[axis];
  }
}

FreqVec negate(const FreqVec& f) {
  FreqVec out = f;
  for (int j = 0; j < f.dims; ++j) out.k[j] = -f.k[j];
  return out;
}

bool lex_positive(const FreqVec& f) {
  for (int j = 0; j < f.dims; ++j) {
    if (f.k[j] > 0) return true;
    if (f.k[j] < 0) return false;
  }
  return false;
}

// Adds coeff * prod_j cos(k_j x_j) for a positive k, expanded into the
// 2^dims exponential sign patterns.
void add_cosine_product(Spectrum& out, const FreqVec& k, double coeff) {
  const int m = k.dims;
  const double perPattern = coeff * std::exp2(-static_cast<double>(m));
  for (int bits = 0; bits < (1 << m); ++bits) {
    FreqVec f = k;
    for (int j = 0; j < m; ++j)
      if (bits & (1 << j)) f.k[j] = -f.k[j];
    out.add(f, Coeff(perPattern, 0.0));
  }
}

}  // namespace

Spectrum dirichlet_cubic(int l, int dims) {
  check_dims(dims);
  if (l < 0 || l > 28) throw std::invalid_argument("dirichlet_cubic: l out of range");
  const double side = std::exp2(l + 1) + 1.0;
  if (std::pow(side, dims) > static_cast<double>(1 << 27))
    throw std::length_error("dirichlet_cubic: too many modes to materialize");
  const int hi = 1 << l;
  Spectrum out(dims);
  for_each_box(dims, -hi, hi, [&](const FreqVec& k) { out.set(k, Coeff(1.0, 0.0)); });
  return out;
}

Spectrum g1(int n, int dims) {
  check_dims(dims);
  if (n < 1 || n > 20) throw std::invalid_argument("g1: n out of range");
  const int hi = (1 << n) - 1;
  Spectrum out(dims);
  for_each_box(dims, 1, hi, [&](const FreqVec& k) {
    double c = 1.0;
    for (int j = 0; j < dims; ++j) c /= static_cast<double>(k.k[j]);
    add_cosine_product(out, k, c);
  });
  return out;
}

Spectrum f3(int n, int dims, const std::vector<double>& p, double r) {
  check_dims(dims);
  if (static_cast<int>(p.size()) != dims)
    throw std::invalid_argument("f3: one p exponent per axis required");
  if (n < 1 || n > 20) throw std::invalid_argument("f3: n out of range");
  double dualGap = 0.0;  // sum(1 - 1/p_j)
  for (double v : p) {
    if (!(v > 1.0) || !std::isfinite(v)) throw std::domain_error("f3: p in (1, inf)");
    dualGap += 1.0 - 1.0 / v;
  }
  const double exponent = -r / static_cast<double>(dims);
  Spectrum out(dims);
  for (int s = 1; s <= n; ++s) {
    const int lo = 1 << (s - 1), hi = (1 << s) - 1;
    const double blockScale =
        std::exp2(-static_cast<double>(s) * dualGap) / static_cast<double>(n);
    for_each_box(dims, 1, hi, [&](const FreqVec& k) {
      if (k.maxAbs() < lo) return;  // belongs to an earlier block
      double c = blockScale;
      for (int j = 0; j < dims; ++j)
        c *= std::pow(static_cast<double>(k.k[j]), exponent);
      add_cosine_product(out, k, c);
    });
  }
  return out;
}

std::vector<int> rudin_shapiro(int s) {
  if (s < 1 || s > 30) throw std::invalid_argument("rudin_shapiro: s out of range");
  const std::uint64_t lo = std::uint64_t{1} << (s - 1);
  const std::uint64_t hi = std::uint64_t{1} << s;
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(hi - lo));
  for (std::uint64_t j = lo; j < hi; ++j)
    out.push_back(std::popcount(j & (j >> 1)) % 2 == 0 ? 1 : -1);
  return out;
}

Spectrum rudin_shapiro_product(int n, int dims, double r) {
  check_dims(dims);
  if (n < 1 || n > 20) throw std::invalid_argument("rudin_shapiro_product: n out of range");
  const double scale =
      std::exp2(-static_cast<double>(n) * (static_cast<double>(dims) / 2.0 + r));
  Spectrum out(dims);
  for (int s = 1; s <= n; ++s) {
    const std::vector<int> signs = rudin_shapiro(s);
    const int lo = 1 << (s - 1), hi = (1 << s) - 1;
    for_each_box(dims, lo, hi, [&](const FreqVec& k) {
      double c = scale;
      for (int j = 0; j < dims; ++j) c *= signs[static_cast<std::size_t>(k.k[j] - lo)];
      out.add(k, Coeff(c, 0.0));
    });
  }
  return out;
}

Spectrum lacunary_random(const BesovParams& params, int L, std::uint64_t seed,
                         BlockProfile profile, int oversample, int threads) {
  params.validate();
  if (L < 1 || L > 24) throw std::invalid_argument("lacunary_random: L out of range");
  const int m = params.dims();
  const SeededSampler root(seed);
  Spectrum out(m);
  for (int s = 1; s <= L; ++s) {
    SeededSampler rng = root.forBlock(s);
    double commonPhase = 0.0;
    std::array<double, kMaxDims> shift{};
    if (profile == BlockProfile::Spiky) {
      commonPhase = rng.angle();
      for (int j = 0; j < m; ++j) shift[j] = rng.angle();
    }
    Spectrum block(m);
    for (const FreqVec& k : block_indices(s, m)) {
      if (!lex_positive(k)) continue;
      double phi;
      if (profile == BlockProfile::Flat) {
        phi = rng.angle();
      } else {
        // One modulated Dirichlet run per block: phase linear in k, so the
        // block polynomial is a translated kernel with a single peak.
        phi = commonPhase;
        for (int j = 0; j < m; ++j) phi -= static_cast<double>(k.k[j]) * shift[j];
      }
      const Coeff c = std::polar(1.0, phi);
      block.set(k, c);
      block.set(negate(k), std::conj(c));
    }
    GridFunction g = synthesize(block, grid_for(block, oversample), threads);
    const double nrm = mixed_lorentz(g, params.axes, threads);
    const double want = std::exp2(-static_cast<double>(s) * params.r);
    block.scale(Coeff(want / nrm, 0.0));
    for (const auto& [f, c] : block) out.set(f, c);
  }
  return out;
}

Spectrum random_spectrum(int dims, int maxfreq, int count, std::uint64_t seed) {
  check_dims(dims);
  if (maxfreq < 1 || count < 1)
    throw std::invalid_argument("random_spectrum: maxfreq and count must be positive");
  const double side = 2.0 * maxfreq + 1.0;
  if (static_cast<double>(count) > std::pow(side, dims))
    throw std::invalid_argument("random_spectrum: count exceeds the number of modes");
  SeededSampler rng(seed);
  Spectrum out(dims);
  const std::uint64_t span = 2 * static_cast<std::uint64_t>(maxfreq) + 1;
  while (out.size() < static_cast<std::size_t>(count)) {
    FreqVec f{};
    f.dims = dims;
    for (int j = 0; j < dims; ++j)
      f.k[j] = static_cast<int32_t>(rng.raw() % span) - maxfreq;
    if (out.contains(f)) continue;
    out.set(f, Coeff(rng.gaussian(), rng.gaussian()));
  }
  return out;
}

}  // namespace mixterm
