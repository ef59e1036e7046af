#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <set>
#include <stdexcept>
#include <vector>

namespace mixterm {

inline constexpr int kMaxDims = 4;

using Coeff = std::complex<double>;

/// Multi-index of a trigonometric harmonic e^{i<k,x>}.
/// Only the first `dims` entries of `k` are meaningful; the rest stay zero so
/// that comparison can ignore them.
struct FreqVec {
  std::array<std::int32_t, kMaxDims> k{};
  int dims = 1;

  static FreqVec of(std::initializer_list<std::int32_t> ks) {
    if (ks.size() == 0 || ks.size() > static_cast<std::size_t>(kMaxDims))
      throw std::invalid_argument("FreqVec: dims must be in [1,4]");
    FreqVec f;
    f.dims = static_cast<int>(ks.size());
    int i = 0;
    for (auto v : ks) f.k[i++] = v;
    return f;
  }

  std::int32_t maxAbs() const {
    std::int32_t m = 0;
    for (int i = 0; i < dims; ++i) m = std::max(m, std::abs(k[i]));
    return m;
  }

  bool operator==(const FreqVec& o) const { return dims == o.dims && k == o.k; }

  // Lexicographic order on (k_1, ..., k_m); also the greedy tie-break order.
  bool operator<(const FreqVec& o) const {
    for (int i = 0; i < dims; ++i) {
      if (k[i] != o.k[i]) return k[i] < o.k[i];
    }
    return false;
  }
};

using FreqSet = std::set<FreqVec>;

/// Sparse Fourier coefficient table, ordered lexicographically by frequency.
class Spectrum {
 public:
  using Map = std::map<FreqVec, Coeff>;

  explicit Spectrum(int dims = 1) : dims_(dims) {
    if (dims < 1 || dims > kMaxDims)
      throw std::invalid_argument("Spectrum: dims must be in [1,4]");
  }

  int dims() const { return dims_; }

  void set(const FreqVec& f, Coeff c) {
    checkDims(f);
    modes_[f] = c;
  }
  void add(const FreqVec& f, Coeff c) {
    checkDims(f);
    modes_[f] += c;
  }
  Coeff get(const FreqVec& f) const {
    auto it = modes_.find(f);
    return it == modes_.end() ? Coeff{0.0, 0.0} : it->second;
  }
  bool contains(const FreqVec& f) const { return modes_.count(f) != 0; }
  void erase(const FreqVec& f) { modes_.erase(f); }

  std::size_t size() const { return modes_.size(); }
  bool empty() const { return modes_.empty(); }

  Map::const_iterator begin() const { return modes_.begin(); }
  Map::const_iterator end() const { return modes_.end(); }

  /// Largest |k_axis| over the support (0 for the empty spectrum).
  std::int32_t maxFreq(int axis) const {
    std::int32_t m = 0;
    for (const auto& [f, c] : modes_) m = std::max(m, std::abs(f.k[axis]));
    return m;
  }

  void scale(Coeff factor) {
    for (auto& [f, c] : modes_) c *= factor;
  }

 private:
  void checkDims(const FreqVec& f) const {
    if (f.dims != dims_) throw std::invalid_argument("Spectrum: dims mismatch");
  }

  int dims_;
  Map modes_;
};

/// Uniform grid over [0, 2pi)^m; per-axis sizes must be powers of two >= 4.
struct GridShape {
  int dims = 1;
  std::array<int, kMaxDims> n{};

  static GridShape of(std::initializer_list<int> sizes) {
    if (sizes.size() == 0 || sizes.size() > static_cast<std::size_t>(kMaxDims))
      throw std::invalid_argument("GridShape: dims must be in [1,4]");
    GridShape s;
    s.dims = static_cast<int>(sizes.size());
    int i = 0;
    for (auto v : sizes) s.n[i++] = v;
    s.validate();
    return s;
  }

  std::size_t total() const {
    std::size_t t = 1;
    for (int i = 0; i < dims; ++i) t *= static_cast<std::size_t>(n[i]);
    return t;
  }

  void validate() const {
    for (int i = 0; i < dims; ++i) {
      int v = n[i];
      if (v < 4 || (v & (v - 1)) != 0)
        throw std::invalid_argument("GridShape: sizes must be powers of two >= 4");
    }
  }
};

/// Complex samples f(x_i), x_i = (2pi i_1/n_1, ..., 2pi i_m/n_m).
/// Storage: axis 1 is contiguous, i.e. linear index = i_1 + n_1*(i_2 + n_2*(...)).
class GridFunction {
 public:
  explicit GridFunction(GridShape shape)
      : shape_(shape), v_(shape.total(), Coeff{0.0, 0.0}) {}

  const GridShape& shape() const { return shape_; }
  int dims() const { return shape_.dims; }
  std::size_t total() const { return v_.size(); }

  std::size_t index(const std::array<int, kMaxDims>& idx) const {
    std::size_t lin = 0;
    for (int a = shape_.dims - 1; a >= 0; --a)
      lin = lin * static_cast<std::size_t>(shape_.n[a]) + static_cast<std::size_t>(idx[a]);
    return lin;
  }

  Coeff& at(const std::array<int, kMaxDims>& idx) { return v_[index(idx)]; }
  const Coeff& at(const std::array<int, kMaxDims>& idx) const { return v_[index(idx)]; }

  Coeff* data() { return v_.data(); }
  const Coeff* data() const { return v_.data(); }
  std::vector<Coeff>& samples() { return v_; }
  const std::vector<Coeff>& samples() const { return v_; }

 private:
  GridShape shape_;
  std::vector<Coeff> v_;
};

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

}  // namespace mixterm
