#include "mixterm/verify.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

#include "mixterm/fft.hpp"
#include "mixterm/parallel.hpp"

namespace mixterm {

namespace {

FreqVec negated(const FreqVec& f) {
  FreqVec out = f;
  for (int j = 0; j < f.dims; ++j) out.k[j] = -f.k[j];
  return out;
}

bool all_same(const std::vector<LorentzExponents>& exps) {
  for (const auto& e : exps)
    if (e.p != exps[0].p || e.theta != exps[0].theta) return false;
  return true;
}

}  // namespace

FitResult loglog_fit(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw std::invalid_argument("loglog_fit: size mismatch");
  const std::size_t n = x.size();
  if (n < 2) throw DegenerateFit("loglog_fit: need at least two points");
  double ymin = std::numeric_limits<double>::infinity(), ymax = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0))
      throw DegenerateFit("loglog_fit: inputs must be positive");
    ymin = std::min(ymin, y[i]);
    ymax = std::max(ymax, y[i]);
  }
  if (ymin <= 1e-10 * ymax)
    throw DegenerateFit("loglog_fit: values span down to the noise floor");

  std::vector<double> lx(n), ly(n);
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    lx[i] = std::log2(x[i]);
    ly[i] = std::log2(y[i]);
    mx += lx[i];
    my += ly[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);

  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  if (sxx == 0.0) throw DegenerateFit("loglog_fit: abscissae coincide");

  FitResult fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ssRes = 0.0, ssTot = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double e = ly[i] - (fit.intercept + fit.slope * lx[i]);
    ssRes += e * e;
    ssTot += (ly[i] - my) * (ly[i] - my);
  }
  fit.r2 = ssTot > 0.0 ? 1.0 - ssRes / ssTot : 1.0;
  return fit;
}

double check_littlewood_paley(const Spectrum& sp, double p, int oversample,
                              int threads) {
  if (!(p > 1.0) || !std::isfinite(p))
    throw std::domain_error("check_littlewood_paley: p in (1, inf)");
  if (sp.empty())
    throw std::invalid_argument("check_littlewood_paley: empty spectrum");
  const int m = sp.dims();
  const GridShape sh = grid_for(sp, oversample);
  const GridFunction f = synthesize(sp, sh, threads);
  const std::vector<double> axes(static_cast<std::size_t>(m), p);
  const double num = mixed_lebesgue(f, axes, threads);

  std::vector<double> sq(sh.total(), 0.0);
  for (int s = 0; s <= max_block(sp); ++s) {
    const Spectrum blk = block_project(sp, s);
    if (blk.empty()) continue;
    const GridFunction d = synthesize(blk, sh, threads);
    const Coeff* v = d.data();
    for (std::size_t i = 0; i < sq.size(); ++i) sq[i] += std::norm(v[i]);
  }
  GridFunction sf(sh);
  for (std::size_t i = 0; i < sq.size(); ++i) sf.data()[i] = Coeff(std::sqrt(sq[i]), 0.0);
  const double den = mixed_lebesgue(sf, axes, threads);
  return num / den;
}

double check_different_metrics(const Spectrum& sp, const std::vector<int>& degree,
                               const std::vector<LorentzExponents>& from,
                               const std::vector<LorentzExponents>& to,
                               int oversample, int threads) {
  const int m = sp.dims();
  if (static_cast<int>(degree.size()) != m || static_cast<int>(from.size()) != m ||
      static_cast<int>(to.size()) != m)
    throw std::invalid_argument("check_different_metrics: one entry per axis");
  for (int j = 0; j < m; ++j) {
    from[j].validate();
    to[j].validate();
    if (!(from[j].p < to[j].p))
      throw std::domain_error("check_different_metrics: requires p_j < q_j");
    if (degree[j] < 1)
      throw std::invalid_argument("check_different_metrics: degrees must be >= 1");
    if (sp.maxFreq(j) > degree[j])
      throw std::invalid_argument("check_different_metrics: degree bound violated");
  }
  if (sp.empty()) throw std::invalid_argument("check_different_metrics: empty spectrum");

  const GridFunction f = synthesize(sp, grid_for(sp, oversample), threads);
  const double nTo = mixed_lorentz(f, to, threads);
  const double nFrom = mixed_lorentz(f, from, threads);
  double factor = 1.0;
  for (int j = 0; j < m; ++j)
    factor *= std::pow(static_cast<double>(degree[j]), 1.0 / from[j].p - 1.0 / to[j].p);
  return nTo / (factor * nFrom);
}

double check_lemma1(const Spectrum& sp, std::uint64_t M, double q, int oversample,
                    int threads) {
  if (!(q > 2.0) || !std::isfinite(q))
    throw std::domain_error("check_lemma1: q in (2, inf)");
  const std::uint64_t N = sp.size();
  if (M < 1 || M > N)
    throw std::invalid_argument("check_lemma1: need 1 <= M <= |support|");
  const int m = sp.dims();
  const Spectrum resid = spectrum_subtract(sp, restrict_to(sp, greedy_select(sp, M)));
  if (resid.empty()) return 0.0;
  const GridFunction g = synthesize(resid, grid_for(resid, oversample), threads);
  const double err = mixed_lebesgue(g, std::vector<double>(static_cast<std::size_t>(m), q), threads);
  const double l2 = std::pow(kTwoPi, 0.5 * m) * std::sqrt(coeff_l2_sq(sp));
  return err / (std::sqrt(static_cast<double>(N) / static_cast<double>(M)) * l2);
}

double dual_certificate(const Spectrum& sp, const FreqSet& omega,
                        const LorentzExponents& target, int oversample,
                        int threads) {
  target.validate();
  if (!(target.theta > 1.0))
    throw std::domain_error("dual_certificate: conjugate exponents need theta > 1");
  const int m = sp.dims();
  Spectrum dual(m);  // conjugated residual: coefficient conj(a_k) at -k
  double l2sq = 0.0;
  for (const auto& [f, c] : sp) {
    if (omega.count(f)) continue;
    dual.set(negated(f), std::conj(c));
    l2sq += std::norm(c);
  }
  if (dual.empty()) return 0.0;
  const double pairing = std::pow(kTwoPi, m) * l2sq;  // integral of f * P, exact
  const LorentzExponents conjExp{target.p / (target.p - 1.0),
                                 target.theta / (target.theta - 1.0)};
  const GridFunction g = synthesize(dual, grid_for(dual, oversample), threads);
  const double dualNorm =
      mixed_lorentz(g, std::vector<LorentzExponents>(static_cast<std::size_t>(m), conjExp), threads);
  return pairing / dualNorm;
}

namespace {

// Mixed Lorentz norm of the all-ones polynomial on rho(s), one axis. Matches
// block_norm_profile's quadrature so plans agree with the materialized path.
double unit_block_norm_1d(int s, const LorentzExponents& e, int oversample,
                          int threads) {
  Spectrum blk(1);
  for (const FreqVec& k : block_indices(s, 1)) blk.set(k, Coeff(1.0, 0.0));
  const GridFunction g = synthesize(blk, grid_for(blk, oversample), threads);
  return mixed_lorentz(g, {e}, threads);
}

}  // namespace

double cube_scale(const BesovParams& cls, int l0, int oversample, int threads) {
  cls.validate();
  if (cls.dims() != 1)
    throw std::invalid_argument("cube_scale: single-axis classes only");
  if (l0 < 1 || l0 > 8) throw std::invalid_argument("cube_scale: l0 in [1, 8]");
  const double sem = besov_seminorm(dirichlet_cubic(l0, 1), cls, oversample, threads);
  const double g = cls.r + 1.0 - 1.0 / cls.axes[0].p;
  return std::exp2(static_cast<double>(l0) * g) / sem;
}

CubePoint cube_rate_point(const BesovParams& cls, const std::vector<double>& q,
                          std::uint64_t M, double scale, double targetExp,
                          bool withCertificate, int threads) {
  cls.validate();
  if (cls.dims() != 1 || q.size() != 1)
    throw std::invalid_argument("cube_rate_point: single-axis parameters only");
  if (!(targetExp > 1.0) || !std::isfinite(targetExp))
    throw std::domain_error("cube_rate_point: target exponent in (1, inf)");

  CubePoint pt;
  BudgetPlan plan = budget_plan(cls, q, M, {});
  const double p = cls.axes[0].p;
  const double g = cls.r + 1.0 - 1.0 / p;
  pt.l = static_cast<int>(std::floor(plan.alpha * plan.n + 1e-9));
  pt.coeff = scale * std::exp2(-g * static_cast<double>(pt.l));
  if (pt.l > 28) throw std::length_error("cube_rate_point: grid would exceed 2^29");

  if (plan.regime == Regime::Two && !plan.degenerate) {
    // The regime-2 budgets consult the member's block norms, which for the
    // cube are the all-ones block norms scaled by the coefficient.
    std::vector<double> profile(static_cast<std::size_t>(plan.windowHi) + 1, 0.0);
    for (int s = plan.windowLo; s <= plan.windowHi; ++s)
      profile[static_cast<std::size_t>(s)] =
          pt.coeff * unit_block_norm_1d(s, cls.axes[0], 4, threads);
    plan = budget_plan(cls, q, M, profile);
  }

  const int fullTop = plan.degenerate ? plan.n : plan.n - 1;
  std::uint64_t kept = (std::uint64_t{1} << (fullTop + 1)) - 1;  // blocks 0..fullTop
  for (int s = plan.windowLo; s <= plan.windowHi; ++s)
    kept += std::min<std::uint64_t>(plan.countAt(s), block_cardinality(s, 1));
  const std::uint64_t totalModes = (std::uint64_t{1} << (pt.l + 1)) + 1;
  const std::uint64_t residCount = totalModes - kept;
  pt.kept = kept;
  pt.plan = plan;

  const std::size_t G = std::size_t{1} << (pt.l + 1);
  const std::int64_t sG = static_cast<std::int64_t>(G);
  std::vector<Coeff> bins(G, Coeff{0.0, 0.0});
  const Coeff cv(pt.coeff, 0.0);
  auto fillRun = [&](std::int64_t k0, std::int64_t k1) {
    for (std::int64_t k = k0; k <= k1; ++k)
      bins[static_cast<std::size_t>(k >= 0 ? k : k + sG)] = cv;
  };

  // Window blocks: the kept modes are the first N_s in lexicographic order,
  // i.e. a run starting at -(2^s - 1); the residual is the ordered tail.
  for (int s = plan.windowLo; s <= plan.windowHi; ++s) {
    const std::uint64_t card = block_cardinality(s, 1);
    const std::uint64_t Ns = std::min<std::uint64_t>(plan.countAt(s), card);
    if (Ns >= card) continue;
    if (s == 0) {
      fillRun(0, 0);
      continue;
    }
    const std::int64_t h = std::int64_t{1} << (s - 1);
    if (Ns < static_cast<std::uint64_t>(h)) {
      fillRun(-(2 * h - 1) + static_cast<std::int64_t>(Ns), -h);
      fillRun(h, 2 * h - 1);
    } else {
      fillRun(static_cast<std::int64_t>(Ns), 2 * h - 1);
    }
  }
  // Blocks past the window up to the cube radius stay entirely in the residual.
  for (int s = std::max(plan.windowHi + 1, fullTop + 1); s <= pt.l; ++s) {
    const std::int64_t h = std::int64_t{1} << (s - 1);
    fillRun(-(2 * h - 1), -h);
    fillRun(h, 2 * h - 1);
  }
  // The +-2^l pair shares the Nyquist bin; both coefficients are real and
  // equal, so the folded samples are exact.
  bins[G >> 1] = Coeff(2.0 * pt.coeff, 0.0);

  fft_inplace(bins.data(), G, +1, threads);

  const double cell = kTwoPi / static_cast<double>(G);
  pt.error = std::pow(
      chunked_abs_pow_sum(bins.data(), G, targetExp, threads) * cell, 1.0 / targetExp);
  if (withCertificate) {
    const double qd = targetExp / (targetExp - 1.0);
    const double dualNorm =
        std::pow(chunked_abs_pow_sum(bins.data(), G, qd, threads) * cell, 1.0 / qd);
    pt.certificate =
        kTwoPi * pt.coeff * pt.coeff * static_cast<double>(residCount) / dualNorm;
  }
  return pt;
}

RateResult rate_experiment(const FamilySpec& family, const SchemeSpec& scheme,
                           const std::vector<std::uint64_t>& Ms,
                           const std::vector<LorentzExponents>& target,
                           int oversample, int threads, bool withCertificates) {
  scheme.cls.validate();
  const int m = scheme.cls.dims();
  if (static_cast<int>(target.size()) != m)
    throw std::invalid_argument("rate_experiment: one target exponent pair per axis");
  for (const auto& e : target) e.validate();
  if (static_cast<int>(scheme.q.size()) != m)
    throw std::invalid_argument("rate_experiment: one q exponent per axis");
  if (Ms.size() < 4)
    throw std::invalid_argument("rate_experiment: need at least four budgets");
  for (std::size_t i = 0; i < Ms.size(); ++i) {
    const std::uint64_t M = Ms[i];
    if (M < 2 || (M & (M - 1)) != 0)
      throw std::invalid_argument("rate_experiment: budgets must be powers of two");
    if ((std::bit_width(M) - 1) % m != 0)
      throw std::invalid_argument("rate_experiment: budgets must be powers of 2^m");
    if (i > 0 && M <= Ms[i - 1])
      throw std::invalid_argument("rate_experiment: budgets must be strictly increasing");
  }

  std::vector<double> p;
  for (const auto& e : scheme.cls.axes) p.push_back(e.p);
  RateResult res;
  res.regime = regime_of(p, scheme.q, scheme.cls.r);
  if (res.regime != Regime::Unsupported) {
    const auto [slope, logPow] = decay_exponent(p, scheme.q, scheme.cls.r, scheme.cls.tau);
    res.predictedSlope = slope;
    res.predictedLog = logPow;
  }

  if (family.kind == FamilyKind::NormalizedCube) {
    if (scheme.kind != SchemeKind::BlockBudget)
      throw std::invalid_argument("rate_experiment: the cube family follows the block-budget plan");
    if (m != 1)
      throw std::invalid_argument("rate_experiment: cube family is single-axis");
    if (target[0].p != target[0].theta)
      throw std::invalid_argument("rate_experiment: cube family needs p = theta targets");
    const double scale = cube_scale(scheme.cls, 4, oversample, threads);
    for (const std::uint64_t M : Ms) {
      const CubePoint cp = cube_rate_point(scheme.cls, scheme.q, M, scale,
                                           target[0].p, withCertificates, threads);
      res.points.push_back({M, cp.error, cp.certificate, cp.kept, cp.plan.n,
                            cp.plan.alpha, cp.plan.degenerate});
    }
  } else {
    if (scheme.kind == SchemeKind::BlockBudget) {
      const BudgetPlan top = budget_plan(scheme.cls, scheme.q, Ms.back(), {});
      if (top.windowHi > family.L)
        throw std::invalid_argument(
            "rate_experiment: family band limit below the plan window");
    }
    if (withCertificates && !all_same(target))
      throw std::invalid_argument(
          "rate_experiment: certificates need a single target exponent pair");
    const BlockProfile profile = family.kind == FamilyKind::LacunarySpiky
                                     ? BlockProfile::Spiky
                                     : BlockProfile::Flat;
    const Spectrum f =
        lacunary_random(scheme.cls, family.L, family.seed, profile, oversample, threads);
    for (const std::uint64_t M : Ms) {
      const Approximant a = build_approximant(f, scheme, M, oversample, threads);
      RatePoint pt;
      pt.M = M;
      pt.error = approximation_error(f, a, target, oversample, threads);
      pt.kept = a.part.size();
      if (a.plan) {
        pt.planN = a.plan->n;
        pt.alpha = a.plan->alpha;
        pt.degenerate = a.plan->degenerate;
      }
      if (withCertificates) {
        FreqSet omega;
        for (const auto& [k, c] : a.part) omega.insert(k);
        pt.certificate = dual_certificate(f, omega, target[0], oversample, threads);
      }
      res.points.push_back(pt);
    }
  }

  std::vector<double> xs, ys;
  for (const RatePoint& pt : res.points) {
    if (pt.error < 1e-10)
      throw DegenerateFit("rate_experiment: error at the quadrature floor");
    xs.push_back(static_cast<double>(pt.M));
    ys.push_back(pt.error);
  }
  res.compensated = res.regime == Regime::Two;
  if (res.compensated) {
    std::vector<double> comp(ys), lx;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      comp[i] *= std::sqrt(xs[i]);
      lx.push_back(std::log2(xs[i]));
    }
    res.fit = loglog_fit(xs, comp);
    res.logFit = loglog_fit(lx, comp);  // exponent of the log factor, informative
  } else {
    res.fit = loglog_fit(xs, ys);
  }
  return res;
}

}  // namespace mixterm
