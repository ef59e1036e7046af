#include "mixterm/spectral.hpp"

#include <bit>
#include <cmath>

#include "mixterm/fft.hpp"
#include "mixterm/parallel.hpp"

namespace mixterm {

namespace {

// Frequency -> DFT bin on an axis of size n (requires |k| < n/2).
inline std::size_t bin_of(std::int32_t k, int n) {
  return static_cast<std::size_t>(k >= 0 ? k : k + n);
}

std::size_t linear_bin(const FreqVec& f, const GridShape& sh) {
  std::size_t lin = 0;
  for (int a = sh.dims - 1; a >= 0; --a)
    lin = lin * static_cast<std::size_t>(sh.n[a]) + bin_of(f.k[a], sh.n[a]);
  return lin;
}

}  // namespace

GridFunction synthesize(const Spectrum& s, const GridShape& shape, int threads) {
  shape.validate();
  if (shape.dims != s.dims())
    throw std::invalid_argument("synthesize: dims mismatch");
  for (int a = 0; a < shape.dims; ++a) {
    if (shape.n[a] <= 2 * s.maxFreq(a))
      throw BandLimitViolation("synthesize: grid size " + std::to_string(shape.n[a]) +
                               " cannot represent frequencies up to " +
                               std::to_string(s.maxFreq(a)) + " alias-free");
  }
  GridFunction g(shape);
  Coeff* data = g.data();
  for (const auto& [f, c] : s) data[linear_bin(f, shape)] = c;
  fft_all_axes(g, +1, threads);
  return g;
}

Spectrum analyze(const GridFunction& g, int threads, double dropTol) {
  GridFunction work = g;
  fft_all_axes(work, -1, threads);
  const GridShape& sh = work.shape();
  const double scale = 1.0 / static_cast<double>(work.total());

  Spectrum out(sh.dims);
  const Coeff* data = work.data();

  double maxMod = 0.0;
  for (std::size_t i = 0; i < work.total(); ++i)
    maxMod = std::max(maxMod, std::abs(data[i]));
  const double cut = dropTol * maxMod * static_cast<double>(scale);

  // Walk all bins with |k_j| < n_j/2 (Nyquist bins are not representable).
  std::array<std::int32_t, kMaxDims> k{};
  std::array<int, kMaxDims> lo{}, hi{};
  for (int a = 0; a < sh.dims; ++a) {
    lo[a] = -(sh.n[a] / 2 - 1);
    hi[a] = sh.n[a] / 2 - 1;
    k[a] = lo[a];
  }
  bool done = false;
  while (!done) {
    FreqVec f;
    f.dims = sh.dims;
    for (int a = 0; a < sh.dims; ++a) f.k[a] = k[a];
    Coeff c = data[linear_bin(f, sh)] * scale;
    double mod = std::abs(c);
    if (mod > 0.0 && mod >= cut) out.set(f, c);
    int a = 0;
    for (; a < sh.dims; ++a) {
      if (k[a] < hi[a]) {
        ++k[a];
        break;
      }
      k[a] = lo[a];
    }
    done = (a == sh.dims);
  }
  return out;
}

int block_of(const FreqVec& f) {
  std::int32_t m = f.maxAbs();
  if (m == 0) return 0;
  return 1 + static_cast<int>(std::bit_width(static_cast<std::uint32_t>(m)) - 1);
}

std::uint64_t block_cardinality(int s, int dims) {
  if (s < 0) throw std::invalid_argument("block_cardinality: s >= 0 required");
  if (s == 0) return 1;
  auto ipow = [](std::uint64_t b, int e) {
    std::uint64_t r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
  };
  std::uint64_t outer = (std::uint64_t{1} << (s + 1)) - 1;
  std::uint64_t inner = (std::uint64_t{1} << s) - 1;
  return ipow(outer, dims) - ipow(inner, dims);
}

std::vector<FreqVec> block_indices(int s, int dims) {
  std::uint64_t card = block_cardinality(s, dims);
  if (card > (std::uint64_t{1} << 27))
    throw std::length_error("block_indices: block too large to enumerate");
  std::vector<FreqVec> out;
  out.reserve(card);
  if (s == 0) {
    FreqVec z;
    z.dims = dims;
    out.push_back(z);
    return out;
  }
  const std::int32_t hi = (std::int32_t{1} << s) - 1;
  const std::int32_t half = std::int32_t{1} << (s - 1);
  std::array<std::int32_t, kMaxDims> k{};
  for (int a = 0; a < dims; ++a) k[a] = -hi;
  bool done = false;
  while (!done) {
    std::int32_t m = 0;
    for (int a = 0; a < dims; ++a) m = std::max(m, std::abs(k[a]));
    if (m >= half) {
      FreqVec f;
      f.dims = dims;
      for (int a = 0; a < dims; ++a) f.k[a] = k[a];
      out.push_back(f);
    }
    int a = dims - 1;
    for (; a >= 0; --a) {
      if (k[a] < hi) {
        ++k[a];
        break;
      }
      k[a] = -hi;
    }
    done = (a < 0);
  }
  return out;
}

Spectrum block_project(const Spectrum& sp, int s) {
  Spectrum out(sp.dims());
  for (const auto& [f, c] : sp)
    if (block_of(f) == s) out.set(f, c);
  return out;
}

int max_block(const Spectrum& sp) {
  int m = -1;
  for (const auto& [f, c] : sp) m = std::max(m, block_of(f));
  return m;
}

GridShape grid_for(const Spectrum& sp, int factor) {
  GridShape sh;
  sh.dims = sp.dims();
  for (int a = 0; a < sh.dims; ++a) {
    std::int64_t want = static_cast<std::int64_t>(factor) *
                        std::max<std::int32_t>(1, sp.maxFreq(a));
    int n = 4;
    while (n < want) n <<= 1;
    sh.n[a] = n;
  }
  return sh;
}

double coeff_l2_sq(const Spectrum& sp) {
  double s = 0.0;
  for (const auto& [f, c] : sp) s += std::norm(c);
  return s;
}

Spectrum spectrum_subtract(const Spectrum& s, const Spectrum& a) {
  Spectrum out(s.dims());
  for (const auto& [f, c] : s) {
    Coeff d = c - a.get(f);
    if (d != Coeff{0.0, 0.0}) out.set(f, d);
  }
  return out;
}

Spectrum restrict_to(const Spectrum& s, const FreqSet& omega) {
  Spectrum out(s.dims());
  for (const auto& f : omega)
    if (s.contains(f)) out.set(f, s.get(f));
  return out;
}

}  // namespace mixterm
