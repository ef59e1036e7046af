#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mixterm/mterm.hpp"
#include "mixterm/testfns.hpp"

namespace mixterm {

class DegenerateFit : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct FitResult {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
};

/// Least-squares line through (log2 x, log2 y). Throws DegenerateFit for fewer
/// than two points, non-positive values, or y spanning down to the noise floor
/// (min y <= 1e-10 * max y).
FitResult loglog_fit(const std::vector<double>& x, const std::vector<double>& y);

/// || f ||_p / || (sum_s |delta_s f|^2)^{1/2} ||_p, both by grid quadrature.
double check_littlewood_paley(const Spectrum& sp, double p, int oversample = 4,
                              int threads = 1);

/// || T ||_{to} / ( prod_j n_j^{1/p_j - 1/q_j} || T ||_{from} ) for a polynomial
/// of degree at most n_j per axis (p from `from`, q from `to`).
double check_different_metrics(const Spectrum& sp, const std::vector<int>& degree,
                               const std::vector<LorentzExponents>& from,
                               const std::vector<LorentzExponents>& to,
                               int oversample = 4, int threads = 1);

/// || P - greedy_M(P) ||_q / ( (N/M)^{1/2} || P ||_2 ), N = |support(P)|.
double check_lemma1(const Spectrum& sp, std::uint64_t M, double q,
                    int oversample = 4, int threads = 1);

/// Duality lower bound on || f - B || over all B supported on omega, in the
/// (q, theta) target norm: pairs f with its conjugated off-omega residual
/// normalized in the conjugate norm (q', theta'). Returns 0 when the residual
/// is empty.
double dual_certificate(const Spectrum& sp, const FreqSet& omega,
                        const LorentzExponents& target, int oversample = 4,
                        int threads = 1);

enum class FamilyKind {
  LacunaryFlat,   // fixed lacunary_random member, flat blocks
  LacunarySpiky,  // fixed lacunary_random member, spiky blocks
  NormalizedCube, // per-M cube 2^{-l(r + sum(1-1/p_j))} * dirichlet_cubic(l),
                  // l = floor(alpha n): the extremal family for the block scheme
};

struct FamilySpec {
  FamilyKind kind = FamilyKind::LacunaryFlat;
  int L = 12;              // max block for the lacunary kinds
  std::uint64_t seed = 1;
};

struct RatePoint {
  std::uint64_t M = 0;
  double error = 0.0;
  double certificate = 0.0;
  std::uint64_t kept = 0;
  int planN = -1;
  double alpha = 0.0;
  bool degenerate = false;
};

struct RateResult {
  std::vector<RatePoint> points;
  FitResult fit;               // vs log2 M; compensated by sqrt(M) in regime 2
  FitResult logFit;            // regime 2 only: compensated error vs log2 log2 M
  double predictedSlope = 0.0; // M exponent from decay_exponent
  double predictedLog = 0.0;   // log2 M exponent
  Regime regime = Regime::Unsupported;
  bool compensated = false;    // regime-2 sqrt(M) compensation applied
};

/// Sweep the scheme over budgets Ms and fit the decay. Requires >= 4 budgets,
/// each a power of 2^m. Certificates are computed per point when
/// `withCertificates` is set.
RateResult rate_experiment(const FamilySpec& family, const SchemeSpec& scheme,
                           const std::vector<std::uint64_t>& Ms,
                           const std::vector<LorentzExponents>& target,
                           int oversample = 4, int threads = 1,
                           bool withCertificates = true);

/// One budget point of the cube family f_M = coeff * dirichlet_cubic(l) with
/// l = floor(alpha n) and coeff = scale * 2^{-l(r + sum(1-1/p_j))}, evaluated
/// without materializing the spectrum (single axis, p = theta target only).
/// The kept set follows the block-budget plan combinatorially; the residual is
/// synthesized on a grid of 2^{l+1} points where the +-2^l boundary pair folds
/// onto the shared Nyquist bin (exact for an equal real pair).
struct CubePoint {
  BudgetPlan plan;
  int l = 0;
  double coeff = 0.0;
  double error = 0.0;
  double certificate = 0.0;
  std::uint64_t kept = 0;
};

CubePoint cube_rate_point(const BesovParams& cls, const std::vector<double>& q,
                          std::uint64_t M, double scale, double targetExp,
                          bool withCertificate, int threads = 1);

/// Scale for the cube family chosen so the member of radius 2^{l0} has unit
/// seminorm; the 2^{-l(r + sum(1-1/p_j))} decay then keeps every member within
/// a constant of the unit ball.
double cube_scale(const BesovParams& cls, int l0 = 4, int oversample = 4,
                  int threads = 1);

}  // namespace mixterm
