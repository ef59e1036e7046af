#include "mixterm/mterm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace mixterm {

namespace {

constexpr double kEqTol = 1e-12;

void check_pq(const std::vector<double>& p, const std::vector<double>& q) {
  if (p.empty() || p.size() != q.size())
    throw std::invalid_argument("p and q must be non-empty and of equal length");
  for (std::size_t j = 0; j < p.size(); ++j) {
    if (!(p[j] > 1.0) || !std::isfinite(p[j]) || !(q[j] > 1.0) || !std::isfinite(q[j]))
      throw std::domain_error("exponents must lie in (1, inf)");
  }
}

double sum_inv(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += 1.0 / x;
  return s;
}

}  // namespace

Regime regime_of(const std::vector<double>& p, const std::vector<double>& q, double r) {
  check_pq(p, q);
  const int m = static_cast<int>(p.size());
  bool allPleq2 = true, allPgeq2 = true, allQgt2 = true, allQleq2 = true, allPltQ = true;
  for (int j = 0; j < m; ++j) {
    if (p[j] > 2.0 + kEqTol) allPleq2 = false;
    if (p[j] < 2.0 - kEqTol) allPgeq2 = false;
    if (q[j] <= 2.0 + kEqTol) allQgt2 = false;
    if (q[j] > 2.0 + kEqTol) allQleq2 = false;
    if (p[j] >= q[j] - kEqTol) allPltQ = false;
  }
  const double gap = sum_inv(p) - sum_inv(q);  // sum(1/p_j - 1/q_j)
  const double sp = sum_inv(p);

  if (allPgeq2 && allPltQ) {
    // 2 <= p_j < q_j < inf
    return r > m / 2.0 + kEqTol ? Regime::AboveTwo : Regime::Unsupported;
  }
  if (allPleq2 && allQgt2) {
    // 1 < p_j <= 2 < q_j < inf
    if (r <= gap + kEqTol) return Regime::Unsupported;
    if (r < sp - kEqTol) return Regime::One;
    if (r <= sp + kEqTol) return Regime::Two;
    return Regime::Three;
  }
  if (allPltQ && allQleq2) {
    // 1 < p_j < q_j <= 2
    return r > gap + kEqTol ? Regime::BelowTwo : Regime::Unsupported;
  }
  return Regime::Unsupported;
}

std::pair<double, double> decay_exponent(const std::vector<double>& p,
                                           const std::vector<double>& q, double r,
                                           double tau) {
  Regime reg = regime_of(p, q, r);
  const double m = static_cast<double>(p.size());
  const double gap = sum_inv(p) - sum_inv(q);
  const double invq = sum_inv(q);
  double halfGap = 0.0;  // sum(1/2 - 1/p_j)
  for (double v : p) halfGap += 0.5 - 1.0 / v;

  switch (reg) {
    case Regime::One:
      return {-(r - gap) / (2.0 * invq), 0.0};
    case Regime::Two:
      return {-0.5, std::isinf(tau) ? 1.0 : 1.0 - 1.0 / tau};
    case Regime::Three:
      return {-(r + halfGap) / m, 0.0};
    case Regime::BelowTwo:
      return {-(r - gap) / m, 0.0};
    case Regime::AboveTwo:
      return {-r / m, 0.0};
    default:
      throw std::domain_error("decay_exponent: parameters outside all supported ranges");
  }
}

FreqSet greedy_select(const Spectrum& sp, std::uint64_t M) {
  std::vector<std::pair<double, FreqVec>> ranked;
  ranked.reserve(sp.size());
  for (const auto& [f, c] : sp) ranked.emplace_back(std::abs(c), f);
  std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second < b.second;
  });
  FreqSet out;
  const std::uint64_t take = std::min<std::uint64_t>(M, ranked.size());
  for (std::uint64_t i = 0; i < take; ++i) out.insert(ranked[i].second);
  return out;
}

BudgetPlan budget_plan(const BesovParams& cls, const std::vector<double>& q,
                       std::uint64_t M, const std::vector<double>& profile) {
  cls.validate();
  std::vector<double> p;
  for (const auto& e : cls.axes) p.push_back(e.p);
  if (q.size() != p.size())
    throw std::invalid_argument("budget_plan: one q exponent per axis required");
  if (M < 2) throw std::invalid_argument("budget_plan: M >= 2 required");

  Regime reg = regime_of(p, q, cls.r);
  if (reg != Regime::One && reg != Regime::Two && reg != Regime::Three)
    throw std::domain_error("budget_plan: block budgets are defined for regimes 1-3 only");

  const int m = static_cast<int>(p.size());
  const double r = cls.r;
  const double sp = sum_inv(p);
  const double invq = sum_inv(q);

  BudgetPlan plan;
  plan.regime = reg;

  // Largest n with 2^{nm} < M.
  int n = 0;
  while (std::uint64_t{1} << (static_cast<std::uint64_t>(n + 1) * m) < M) ++n;
  plan.n = n;

  if (reg == Regime::Three) {
    double halfGap = 0.0;
    for (double v : p) halfGap += 0.5 - 1.0 / v;
    plan.alpha = (r + halfGap) / (r + invq - sp);
  } else {
    plan.alpha = static_cast<double>(m) / (2.0 * invq);
  }

  // Snap alpha*n to a nearby integer so the window edge does not depend on
  // rounding in the alpha division.
  double an = plan.alpha * n;
  if (std::abs(an - std::round(an)) < 1e-9) an = std::round(an);
  plan.windowLo = n;
  plan.windowHi = static_cast<int>(std::ceil(an)) - 1;
  if (plan.windowHi < plan.windowLo) {
    plan.degenerate = true;
    plan.windowHi = plan.windowLo - 1;
  }

  const double twoNM = std::exp2(static_cast<double>(n) * m);
  for (int s = plan.windowLo; s <= plan.windowHi; ++s) {
    double raw = 0.0;
    switch (reg) {
      case Regime::One:
        raw = twoNM * std::exp2(static_cast<double>(s) * (sp - r)) *
              std::exp2(-static_cast<double>(n) * plan.alpha * (sp - r));
        break;
      case Regime::Two: {
        double blockNorm = (s >= 0 && static_cast<std::size_t>(s) < profile.size())
                               ? profile[static_cast<std::size_t>(s)]
                               : 0.0;
        double nPow = std::isinf(cls.tau)
                          ? 1.0 / static_cast<double>(n)
                          : std::pow(static_cast<double>(n), 1.0 / cls.tau - 1.0);
        raw = twoNM * nPow * blockNorm * std::exp2(static_cast<double>(s) * r);
        break;
      }
      case Regime::Three: {
        double pGap = 0.0;  // sum(1/p_j - 1)
        for (double v : p) pGap += 1.0 / v - 1.0;
        raw = std::exp2(static_cast<double>(n) * (r - pGap)) *
              std::exp2(-static_cast<double>(s) * (r - sp));
        break;
      }
      default:
        break;
    }
    plan.counts.push_back(static_cast<std::uint64_t>(std::floor(raw)) + 1);
  }

  // Degenerate window: the plan is plain truncation at block n.
  const int fullTop = plan.degenerate ? n : n - 1;
  plan.total = 0;
  for (int s = 0; s <= fullTop; ++s) plan.total += block_cardinality(s, m);
  for (int s = plan.windowLo; s <= plan.windowHi; ++s)
    plan.total += std::min(plan.countAt(s), block_cardinality(s, m));
  return plan;
}

namespace {

Approximant build_truncation(const Spectrum& sp, std::uint64_t M) {
  Approximant a;
  a.kind = SchemeKind::Truncation;
  a.budget = M;
  a.part = Spectrum(sp.dims());

  int top = max_block(sp);
  std::vector<std::uint64_t> perBlock(static_cast<std::size_t>(top + 2), 0);
  for (const auto& [f, c] : sp) ++perBlock[static_cast<std::size_t>(block_of(f))];

  std::uint64_t used = 0;
  int level = -1;
  for (int s = 0; s <= top; ++s) {
    if (used + perBlock[static_cast<std::size_t>(s)] > M) break;
    used += perBlock[static_cast<std::size_t>(s)];
    level = s;
  }
  a.truncationLevel = level;
  for (const auto& [f, c] : sp)
    if (block_of(f) <= level) a.part.set(f, c);
  return a;
}

}  // namespace

Approximant build_approximant(const Spectrum& sp, const SchemeSpec& scheme,
                              std::uint64_t M, int oversample, int threads) {
  switch (scheme.kind) {
    case SchemeKind::Greedy: {
      Approximant a;
      a.kind = SchemeKind::Greedy;
      a.budget = M;
      a.part = restrict_to(sp, greedy_select(sp, M));
      return a;
    }
    case SchemeKind::Truncation:
      return build_truncation(sp, M);
    case SchemeKind::BlockBudget: {
      std::vector<double> profile;
      // Block norms of the input are only consulted in regime 2.
      std::vector<double> p;
      for (const auto& e : scheme.cls.axes) p.push_back(e.p);
      if (regime_of(p, scheme.q, scheme.cls.r) == Regime::Two)
        profile = block_norm_profile(sp, scheme.cls.axes, oversample, threads);
      BudgetPlan plan = budget_plan(scheme.cls, scheme.q, M, profile);

      Approximant a;
      a.kind = SchemeKind::BlockBudget;
      a.budget = M;
      a.part = Spectrum(sp.dims());

      const int fullTop = plan.degenerate ? plan.n : plan.n - 1;
      for (const auto& [f, c] : sp)
        if (block_of(f) <= fullTop) a.part.set(f, c);
      for (int s = plan.windowLo; s <= plan.windowHi; ++s) {
        Spectrum block = block_project(sp, s);
        if (block.empty()) continue;
        for (const auto& f : greedy_select(block, plan.countAt(s)))
          a.part.set(f, block.get(f));
      }
      a.plan = std::move(plan);
      return a;
    }
  }
  throw std::logic_error("build_approximant: unknown scheme");
}

double approximation_error(const Spectrum& sp, const Approximant& a,
                           const std::vector<LorentzExponents>& target,
                           int oversample, int threads) {
  Spectrum residual = spectrum_subtract(sp, a.part);
  if (residual.empty()) return 0.0;
  GridShape sh = grid_for(residual, oversample);
  GridFunction g = synthesize(residual, sh, threads);
  return mixed_lorentz(g, target, threads);
}

}  // namespace mixterm
