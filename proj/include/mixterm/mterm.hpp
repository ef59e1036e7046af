#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "mixterm/besov.hpp"

namespace mixterm {

enum class Regime {
  One,           // sum(1/p_j - 1/q_j) < r < sum 1/p_j, with 1 < p_j <= 2 < q_j
  Two,           // r = sum 1/p_j
  Three,         // r > sum 1/p_j
  BelowTwo,    // 1 < p_j < q_j <= 2, r > sum(1/p_j - 1/q_j)
  AboveTwo,  // 2 <= p_j < q_j < inf, r > m/2
  Unsupported,
};

/// Classify (p, q, r). Equalities are resolved with a 1e-12 tolerance.
Regime regime_of(const std::vector<double>& p, const std::vector<double>& q, double r);

/// Predicted decay e_M ~ M^{first} (log2 M)^{second}. Throws std::domain_error
/// for unsupported parameter ranges.
std::pair<double, double> decay_exponent(const std::vector<double>& p,
                                           const std::vector<double>& q, double r,
                                           double tau);

enum class SchemeKind { Greedy, BlockBudget, Truncation };

/// Approximation scheme: the class/target data is only consulted by BlockBudget.
struct SchemeSpec {
  SchemeKind kind = SchemeKind::Greedy;
  BesovParams cls;        // smoothness class of the input
  std::vector<double> q;  // target integrability exponents, one per axis
};

/// Per-block harmonic budget for the window n <= s < alpha*n.
struct BudgetPlan {
  int n = 0;
  double alpha = 1.0;
  Regime regime = Regime::Unsupported;
  int windowLo = 0;
  int windowHi = -1;                 // inclusive; empty window if hi < lo
  std::vector<std::uint64_t> counts; // N_s for s = windowLo..windowHi
  bool degenerate = false;           // empty window: plan is truncation at n
  std::uint64_t total = 0;           // sum of full low blocks + min(N_s, |rho(s)|)

  std::uint64_t countAt(int s) const {
    if (s < windowLo || s > windowHi) return 0;
    return counts[static_cast<std::size_t>(s - windowLo)];
  }
};

/// The M modes with largest |a_k|; ties broken lexicographically (smaller first).
FreqSet greedy_select(const Spectrum& sp, std::uint64_t M);

/// Block budgets per the scheme's regime. `profile` (block norms of the input)
/// is only consulted in regime 2 and may be empty otherwise.
BudgetPlan budget_plan(const BesovParams& cls, const std::vector<double>& q,
                       std::uint64_t M, const std::vector<double>& profile);

struct Approximant {
  Spectrum part;
  SchemeKind kind = SchemeKind::Greedy;
  std::uint64_t budget = 0;
  std::optional<BudgetPlan> plan;
  int truncationLevel = -1;  // for Truncation: largest fully kept block
};

/// Coefficients are always the original Fourier coefficients of `sp`.
Approximant build_approximant(const Spectrum& sp, const SchemeSpec& scheme,
                              std::uint64_t M, int oversample = 4, int threads = 1);

/// || f - A || in the iterated Lorentz target norm, via synthesis of the
/// residual on a grid with oversample * maxFreq points per axis.
double approximation_error(const Spectrum& sp, const Approximant& a,
                           const std::vector<LorentzExponents>& target,
                           int oversample = 4, int threads = 1);

}  // namespace mixterm
