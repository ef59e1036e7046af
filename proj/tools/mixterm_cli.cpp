// Command-line front end: norm evaluation, approximant construction, rate
// sweeps with slope gates, inequality check suites, and test-function export.
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mixterm/io.hpp"
#include "mixterm/parallel.hpp"

namespace {

using namespace mixterm;
using nlohmann::json;

struct CommonOpts {
  int threads = 0;  // 0: use available parallelism
  int oversample = 4;
  std::string outDir;
};

std::string out_path(const CommonOpts& c, const std::string& file) {
  if (file.empty() || file.front() == '/') return file;
  std::string dir = c.outDir;
  if (dir.empty()) {
    if (const char* env = std::getenv("MIXTERM_OUT_DIR")) dir = env;
  }
  if (dir.empty()) return file;
  std::filesystem::create_directories(dir);
  return dir + "/" + file;
}

double parse_tau(const std::string& s) {
  if (s == "inf") return std::numeric_limits<double>::infinity();
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &pos);
  } catch (const std::logic_error&) {
    pos = 0;
  }
  if (pos != s.size() || !(v > 0.0))
    throw std::invalid_argument("tau must be a positive number or \"inf\"");
  return v;
}

std::vector<LorentzExponents> make_exps(const std::vector<double>& p,
                                        std::vector<double> theta) {
  if (p.empty()) throw std::invalid_argument("at least one exponent required");
  if (theta.empty()) theta = p;
  if (theta.size() != p.size())
    throw std::invalid_argument("theta needs one value per p entry");
  std::vector<LorentzExponents> out;
  for (std::size_t j = 0; j < p.size(); ++j) {
    LorentzExponents e{p[j], theta[j]};
    e.validate();
    out.push_back(e);
  }
  return out;
}

std::string join(const std::vector<double>& v) {
  std::ostringstream os;
  os << std::setprecision(17);
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ":" : "") << v[i];
  return os.str();
}

std::string join_u64(const std::vector<std::uint64_t>& v) {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ":" : "") << v[i];
  return os.str();
}

std::string grid_desc(const GridShape& sh) {
  std::ostringstream os;
  os << "n=";
  for (int a = 0; a < sh.dims; ++a) os << (a ? "x" : "") << sh.n[a];
  return os.str();
}

// Names the hypothesis violated by (p, q, r), for diagnostics.
std::string regime_violation(const std::vector<double>& p,
                             const std::vector<double>& q, double r) {
  double gap = 0.0, sp = 0.0;
  bool pLow = true, pHigh = true, qLow = true, qHigh = true, ordered = true;
  for (std::size_t j = 0; j < p.size(); ++j) {
    gap += 1.0 / p[j] - 1.0 / q[j];
    sp += 1.0 / p[j];
    if (p[j] > 2.0) pLow = false;
    if (p[j] < 2.0) pHigh = false;
    if (q[j] > 2.0) qLow = false;
    if (q[j] <= 2.0) qHigh = false;
    if (p[j] >= q[j]) ordered = false;
  }
  std::ostringstream os;
  if (!ordered) {
    os << "needs p_j < q_j on every axis";
  } else if (pLow && qHigh) {
    os << "with 1 < p_j <= 2 < q_j the smoothness must satisfy r > sum(1/p_j - 1/q_j) = "
       << gap;
  } else if (pHigh) {
    os << "with p_j >= 2 the smoothness must satisfy r > m/2 = " << p.size() / 2.0;
  } else if (qLow) {
    os << "with q_j <= 2 the smoothness must satisfy r > sum(1/p_j - 1/q_j) = " << gap;
  } else {
    os << "exponents mix q_j <= 2 with q_j > 2 axes, which no supported range covers";
  }
  return os.str();
}

int run_norm(const CommonOpts& common, const std::string& gridFile,
             const std::string& spectrumFile, double constant, bool haveConstant,
             const std::vector<double>& p, const std::vector<double>& theta,
             bool plain, const std::string& jsonOut) {
  const int sources = (!gridFile.empty()) + (!spectrumFile.empty()) + haveConstant;
  if (sources != 1)
    throw std::invalid_argument(
        "exactly one of --grid, --spectrum, --constant is required");
  const auto exps = make_exps(p, theta);
  const int m = static_cast<int>(exps.size());
  const int threads = resolve_threads(common.threads);

  std::string inputDesc, gridStr;
  double value = 0.0;
  if (!gridFile.empty()) {
    const GridFunction g = read_grid_binary(gridFile);
    if (g.dims() != m)
      throw std::invalid_argument("exponent count does not match grid dims");
    gridStr = grid_desc(g.shape());
    inputDesc = "grid:" + gridFile;
    value = plain ? mixed_lebesgue(g, p, threads) : mixed_lorentz(g, exps, threads);
  } else {
    Spectrum sp(m);
    if (haveConstant) {
      FreqVec zero{};
      zero.dims = m;
      sp.set(zero, Coeff(constant, 0.0));
      inputDesc = "constant";
    } else {
      sp = read_spectrum_csv(spectrumFile);
      if (sp.dims() != m)
        throw std::invalid_argument("exponent count does not match spectrum dims");
      inputDesc = "spectrum:" + spectrumFile;
    }
    const GridShape sh = grid_for(sp, common.oversample);
    gridStr = grid_desc(sh) + ",oversample=" + std::to_string(common.oversample);
    const GridFunction g = synthesize(sp, sh, threads);
    value = plain ? mixed_lebesgue(g, p, threads) : mixed_lorentz(g, exps, threads);
  }

  std::cout << std::setprecision(17) << value << "\n";
  if (!jsonOut.empty()) {
    ArtifactMeta meta;
    meta.config = "cmd=norm,input=" + inputDesc + ",p=" + join(p) +
                  ",theta=" + join(theta.empty() ? p : theta) +
                  ",plain=" + (plain ? "1" : "0");
    meta.grid = gridStr;
    json j;
    j["meta"] = {{"version", kVersion}, {"config", meta.config}, {"seed", meta.seed},
                 {"grid", meta.grid}};
    j["value"] = value;
    std::ofstream os(out_path(common, jsonOut));
    if (!os) throw std::runtime_error("cannot open for writing: " + jsonOut);
    os << j.dump(2) << "\n";
  }
  return 0;
}

SchemeKind parse_scheme(const std::string& s) {
  if (s == "greedy") return SchemeKind::Greedy;
  if (s == "block-budget") return SchemeKind::BlockBudget;
  if (s == "truncation") return SchemeKind::Truncation;
  throw std::invalid_argument("unknown scheme: " + s);
}

struct ClassOpts {
  std::vector<double> p, theta;
  double r = 1.0;
  std::string tau = "1";

  BesovParams build() const {
    BesovParams cls;
    cls.axes = make_exps(p, theta);
    cls.r = r;
    cls.tau = parse_tau(tau);
    cls.validate();
    return cls;
  }
  std::string desc() const {
    return "p=" + join(p) + ",theta=" + join(theta.empty() ? p : theta) +
           ",r=" + std::to_string(r) + ",tau=" + tau;
  }
};

int run_approx(const CommonOpts& common, const std::string& spectrumFile,
               const std::string& schemeName, std::uint64_t M,
               const ClassOpts& clsOpts, const std::vector<double>& q,
               const std::vector<double>& targetP, const std::vector<double>& targetTheta,
               const std::string& outPrefix) {
  const Spectrum sp = read_spectrum_csv(spectrumFile);
  const int m = sp.dims();
  const int threads = resolve_threads(common.threads);

  SchemeSpec scheme;
  scheme.kind = parse_scheme(schemeName);
  if (scheme.kind == SchemeKind::BlockBudget) {
    if (clsOpts.p.empty() || q.empty())
      throw std::invalid_argument("block-budget requires --class-p, --r and --q");
    scheme.cls = clsOpts.build();
    scheme.q = q;
    if (scheme.cls.dims() != m || static_cast<int>(q.size()) != m)
      throw std::invalid_argument("class/target exponents must match spectrum dims");
    std::vector<double> pv;
    for (const auto& e : scheme.cls.axes) pv.push_back(e.p);
    if (regime_of(pv, q, scheme.cls.r) == Regime::Unsupported)
      throw std::invalid_argument("unsupported parameter range: " +
                                  regime_violation(pv, q, scheme.cls.r));
  }

  std::vector<double> tp = targetP.empty() ? q : targetP;
  if (tp.empty()) tp.assign(static_cast<std::size_t>(m), 2.0);
  const auto target = make_exps(tp, targetTheta);
  if (static_cast<int>(target.size()) != m)
    throw std::invalid_argument("target exponents must match spectrum dims");

  const Approximant a = build_approximant(sp, scheme, M, common.oversample, threads);
  const double err = approximation_error(sp, a, target, common.oversample, threads);

  ArtifactMeta meta;
  meta.config = "cmd=approx,input=spectrum:" + spectrumFile + ",scheme=" + schemeName +
                ",M=" + std::to_string(M) +
                (scheme.kind == SchemeKind::BlockBudget
                     ? ",class{" + clsOpts.desc() + "},q=" + join(q)
                     : std::string()) +
                ",target-p=" + join(tp) +
                ",target-theta=" + join(targetTheta.empty() ? tp : targetTheta);
  meta.grid = "oversample=" + std::to_string(common.oversample);
  write_approximant(a, out_path(common, outPrefix), meta);
  std::cout << std::setprecision(17) << "kept=" << a.part.size() << " error=" << err
            << "\n";
  return 0;
}

FamilyKind parse_family(const std::string& s) {
  if (s == "flat") return FamilyKind::LacunaryFlat;
  if (s == "spiky") return FamilyKind::LacunarySpiky;
  if (s == "cube") return FamilyKind::NormalizedCube;
  throw std::invalid_argument("unknown family: " + s);
}

int run_rates(const CommonOpts& common, const std::string& familyName, int L,
              std::uint64_t seed, const std::string& schemeName,
              const ClassOpts& clsOpts, const std::vector<double>& q,
              const std::vector<double>& targetP, const std::vector<double>& targetTheta,
              const std::vector<std::uint64_t>& Ms, double band, bool noCertificates,
              bool dryRun, const std::string& reportFile, const std::string& csvFile,
              const std::string& plotFile) {
  SchemeSpec scheme;
  scheme.kind = parse_scheme(schemeName);
  scheme.cls = clsOpts.build();
  scheme.q = q;
  const int m = scheme.cls.dims();
  if (static_cast<int>(q.size()) != m)
    throw std::invalid_argument("--q needs one value per class axis");

  std::vector<double> pv;
  for (const auto& e : scheme.cls.axes) pv.push_back(e.p);
  const Regime regime = regime_of(pv, q, scheme.cls.r);
  if (regime == Regime::Unsupported)
    throw std::invalid_argument("unsupported parameter range: " +
                                regime_violation(pv, q, scheme.cls.r));

  const int threads = resolve_threads(common.threads);
  if (dryRun) {
    for (const std::uint64_t M : Ms) {
      if (scheme.kind == SchemeKind::BlockBudget) {
        const BudgetPlan plan = budget_plan(scheme.cls, q, M, {});
        std::cout << "M=" << M << " n=" << plan.n << " alpha=" << plan.alpha
                  << " window=[" << plan.windowLo << "," << plan.windowHi << "]"
                  << (plan.degenerate ? " degenerate" : "");
        if (!plan.degenerate) {
          std::cout << " counts=";
          for (int s = plan.windowLo; s <= plan.windowHi; ++s)
            std::cout << (s > plan.windowLo ? ":" : "") << plan.countAt(s);
          if (plan.regime == Regime::Two)
            std::cout << " (unit block norms; actual counts scale with the member)";
        }
        std::cout << "\n";
      } else {
        std::cout << "M=" << M << " scheme=" << schemeName << "\n";
      }
    }
    return 0;
  }

  std::vector<double> tp = targetP.empty() ? q : targetP;
  const auto target = make_exps(tp, targetTheta);

  FamilySpec family;
  family.kind = parse_family(familyName);
  family.L = L;
  family.seed = seed;

  const RateResult res = rate_experiment(family, scheme, Ms, target,
                                         common.oversample, threads, !noCertificates);

  ArtifactMeta meta;
  meta.config = "cmd=rates,family=" + familyName + ",L=" + std::to_string(L) +
                ",scheme=" + schemeName + ",class{" + clsOpts.desc() + "}" +
                ",q=" + join(q) + ",target-p=" + join(tp) +
                ",target-theta=" + join(targetTheta.empty() ? tp : targetTheta) +
                ",M=" + join_u64(Ms) + ",band=" + std::to_string(band) +
                ",certificates=" + (noCertificates ? "0" : "1");
  meta.seed = seed;
  meta.grid = "oversample=" + std::to_string(common.oversample);

  if (!reportFile.empty()) {
    std::ofstream os(out_path(common, reportFile));
    if (!os) throw std::runtime_error("cannot open for writing: " + reportFile);
    os << rate_report_json(res, meta);
  }
  if (!csvFile.empty()) {
    std::ofstream os(out_path(common, csvFile));
    if (!os) throw std::runtime_error("cannot open for writing: " + csvFile);
    os << rate_report_csv(res, meta);
  }
  if (!plotFile.empty()) {
    std::ofstream os(out_path(common, plotFile));
    if (!os) throw std::runtime_error("cannot open for writing: " + plotFile);
    os << rate_plot_data(res);
  }

  const double expected = res.compensated ? 0.0 : res.predictedSlope;
  const double tol = band * std::abs(res.predictedSlope);
  const bool pass = std::abs(res.fit.slope - expected) <= tol;
  std::cout << std::setprecision(10) << "regime=" << regime_name(res.regime)
            << (res.compensated ? " compensated" : "") << " slope=" << res.fit.slope
            << " expected=" << expected << " band=" << tol << " r2=" << res.fit.r2
            << (pass ? " PASS" : " FAIL") << "\n";
  return pass ? 0 : 1;
}

int run_check(const CommonOpts& common, const std::string& suite, std::uint64_t seed,
              int trials, int m, double p, double q, int modes, int maxfreq,
              const std::string& outFile) {
  if (trials < 1) throw std::invalid_argument("--trials must be positive");
  if (modes < 2) throw std::invalid_argument("--modes must be at least 2");
  const int threads = resolve_threads(common.threads);
  double minRatio = std::numeric_limits<double>::infinity();
  double maxRatio = 0.0;
  int violations = 0;
  int count = 0;
  auto record = [&](double ratio) {
    minRatio = std::min(minRatio, ratio);
    maxRatio = std::max(maxRatio, ratio);
    ++count;
  };

  for (int t = 0; t < trials; ++t) {
    const std::uint64_t s = seed + static_cast<std::uint64_t>(t);
    const Spectrum sp = random_spectrum(m, maxfreq, modes, s);
    if (suite == "littlewood-paley") {
      record(check_littlewood_paley(sp, p, common.oversample, threads));
    } else if (suite == "metrics") {
      std::vector<int> degree(static_cast<std::size_t>(m));
      for (int j = 0; j < m; ++j) degree[static_cast<std::size_t>(j)] = std::max(1, sp.maxFreq(j));
      record(check_different_metrics(sp, degree, make_exps({p}, {}), make_exps({q}, {}),
                                     common.oversample, threads));
    } else if (suite == "lemma1") {
      for (const int frac : {2, 4, 8}) {
        const std::uint64_t M = static_cast<std::uint64_t>(modes / frac);
        if (M < 1 || M >= sp.size()) continue;
        record(check_lemma1(sp, M, q, common.oversample, threads));
      }
    } else if (suite == "certificate") {
      const std::uint64_t M = 1 + (s % static_cast<std::uint64_t>(modes - 1));
      SchemeSpec scheme;
      scheme.kind = SchemeKind::Greedy;
      const Approximant a = build_approximant(sp, scheme, M, common.oversample, threads);
      const auto target = make_exps(std::vector<double>(static_cast<std::size_t>(m), q), {});
      const double err = approximation_error(sp, a, target, common.oversample, threads);
      FreqSet omega;
      for (const auto& [k, c] : a.part) omega.insert(k);
      const double cert = dual_certificate(sp, omega, target[0], common.oversample, threads);
      if (cert > err + 1e-8) ++violations;
      if (err > 0.0) record(cert / err);
    } else {
      throw std::invalid_argument("unknown suite: " + suite);
    }
  }

  // The metrics suite for a two-axis run uses the same p on both axes; the
  // single-exponent API keeps the report schema uniform across suites.
  ArtifactMeta meta;
  meta.config = "cmd=check,suite=" + suite + ",trials=" + std::to_string(trials) +
                ",m=" + std::to_string(m) + ",p=" + std::to_string(p) +
                ",q=" + std::to_string(q) + ",modes=" + std::to_string(modes) +
                ",maxfreq=" + std::to_string(maxfreq);
  meta.seed = seed;
  meta.grid = "oversample=" + std::to_string(common.oversample);
  json j;
  j["meta"] = {{"version", kVersion}, {"config", meta.config}, {"seed", meta.seed},
               {"grid", meta.grid}};
  j["suite"] = suite;
  j["trials"] = count;
  j["maxRatio"] = maxRatio;
  j["minRatio"] = minRatio;
  if (suite == "certificate") j["violations"] = violations;
  const std::string text = j.dump(2) + "\n";
  if (outFile.empty()) {
    std::cout << text;
  } else {
    std::ofstream os(out_path(common, outFile));
    if (!os) throw std::runtime_error("cannot open for writing: " + outFile);
    os << text;
    std::cout << "suite=" << suite << " trials=" << count << " minRatio=" << minRatio
              << " maxRatio=" << maxRatio << "\n";
  }
  return 0;
}

int run_testfn(const CommonOpts& common, const std::string& kind, int l, int n, int m,
               double r, const ClassOpts& clsOpts, int L, std::uint64_t seed,
               const std::string& profileName, int maxfreq, int count,
               const std::string& outFile) {
  const int threads = resolve_threads(common.threads);
  Spectrum sp(1);
  if (kind == "dirichlet") {
    sp = dirichlet_cubic(l, m);
  } else if (kind == "g1") {
    sp = g1(n, m);
  } else if (kind == "f3") {
    if (clsOpts.p.empty()) throw std::invalid_argument("f3 requires --class-p");
    sp = f3(n, m, clsOpts.p, r);
  } else if (kind == "rudin-shapiro") {
    sp = rudin_shapiro_product(n, m, r);
  } else if (kind == "lacunary") {
    if (clsOpts.p.empty()) throw std::invalid_argument("lacunary requires --class-p");
    ClassOpts withR = clsOpts;
    withR.r = r;
    const BlockProfile profile = profileName == "spiky" ? BlockProfile::Spiky
                                                        : BlockProfile::Flat;
    if (profileName != "flat" && profileName != "spiky")
      throw std::invalid_argument("--profile must be flat or spiky");
    sp = lacunary_random(withR.build(), L, seed, profile, common.oversample, threads);
  } else if (kind == "random") {
    sp = random_spectrum(m, maxfreq, count, seed);
  } else {
    throw std::invalid_argument("unknown test function kind: " + kind);
  }

  ArtifactMeta meta;
  meta.config = "cmd=testfn,kind=" + kind + ",l=" + std::to_string(l) +
                ",n=" + std::to_string(n) + ",m=" + std::to_string(m) +
                ",r=" + std::to_string(r) +
                (clsOpts.p.empty() ? std::string() : ",class-p=" + join(clsOpts.p)) +
                ",L=" + std::to_string(L) + ",profile=" + profileName +
                ",maxfreq=" + std::to_string(maxfreq) + ",count=" + std::to_string(count);
  meta.seed = seed;
  meta.grid = "oversample=" + std::to_string(common.oversample);
  write_spectrum_csv(sp, out_path(common, outFile), meta);
  std::cout << "modes=" << sp.size() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mixed-norm Lorentz functionals and M-term approximation of trigonometric polynomials"};
  app.require_subcommand(1);
  app.set_config("--config", "", "INI configuration file; command-line flags override it");

  CommonOpts common;
  app.add_option("--threads", common.threads,
                 "Worker thread cap (0 = available parallelism); results do not depend on it");
  app.add_option("--oversample", common.oversample, "Synthesis grid oversampling factor")
      ->check(CLI::Range(4, 64));
  app.add_option("--out-dir", common.outDir,
                 "Output directory (overrides MIXTERM_OUT_DIR; default current directory)");

  // norm
  auto* normCmd = app.add_subcommand("norm", "Mixed Lorentz norm of a grid or spectrum");
  normCmd->fallthrough();
  std::string normGrid, normSpectrum, normJson;
  double normConstant = 0.0;
  std::vector<double> normP, normTheta;
  bool normPlain = false;
  normCmd->add_option("--grid", normGrid, "Grid samples (binary MXTG file)");
  normCmd->add_option("--spectrum", normSpectrum, "Spectrum CSV file");
  auto* constOpt = normCmd->add_option("--constant", normConstant, "Constant function value");
  normCmd->add_option("--p", normP, "Per-axis primary exponents")->delimiter(',');
  normCmd->add_option("--theta", normTheta, "Per-axis fine exponents (default: p)")
      ->delimiter(',');
  normCmd->add_flag("--plain", normPlain, "Plain iterated Lebesgue norm (requires p = theta)");
  normCmd->add_option("--json", normJson, "Write a JSON report here");

  // approx
  auto* approxCmd = app.add_subcommand("approx", "Build an M-term approximant");
  approxCmd->fallthrough();
  std::string apSpectrum, apScheme, apOut;
  std::uint64_t apM = 0;
  ClassOpts apCls;
  std::vector<double> apQ, apTargetP, apTargetTheta;
  approxCmd->add_option("--spectrum", apSpectrum, "Input spectrum CSV")->required();
  approxCmd->add_option("--scheme", apScheme, "greedy | block-budget | truncation")->required();
  approxCmd->add_option("-M,--budget", apM, "Harmonic budget")->required();
  approxCmd->add_option("--class-p", apCls.p, "Class exponents p")->delimiter(',');
  approxCmd->add_option("--class-theta", apCls.theta, "Class exponents theta")->delimiter(',');
  approxCmd->add_option("--r", apCls.r, "Class smoothness r");
  approxCmd->add_option("--tau", apCls.tau, "Class fine index tau (number or \"inf\")");
  approxCmd->add_option("--q", apQ, "Target integrability exponents")->delimiter(',');
  approxCmd->add_option("--target-p", apTargetP, "Error norm exponents (default: q)")
      ->delimiter(',');
  approxCmd->add_option("--target-theta", apTargetTheta, "Error norm fine exponents")
      ->delimiter(',');
  approxCmd->add_option("--out", apOut, "Output prefix for .csv and _plan.json")->required();

  // rates
  auto* ratesCmd = app.add_subcommand("rates", "Rate sweep with a slope gate");
  ratesCmd->fallthrough();
  std::string rtFamily, rtScheme, rtReport, rtCsv, rtPlot;
  int rtL = 12;
  std::uint64_t rtSeed = 1;
  ClassOpts rtCls;
  std::vector<double> rtQ, rtTargetP, rtTargetTheta;
  std::vector<std::uint64_t> rtMs;
  double rtBand = 0.2;
  bool rtNoCert = false, rtDryRun = false;
  ratesCmd->add_option("--family", rtFamily, "flat | spiky | cube")->required();
  ratesCmd->add_option("--L", rtL, "Lacunary band limit (flat/spiky families)");
  ratesCmd->add_option("--seed", rtSeed, "Random seed for the family member");
  ratesCmd->add_option("--scheme", rtScheme, "greedy | block-budget | truncation")->required();
  ratesCmd->add_option("--class-p", rtCls.p, "Class exponents p")->delimiter(',')->required();
  ratesCmd->add_option("--class-theta", rtCls.theta, "Class exponents theta")->delimiter(',');
  ratesCmd->add_option("--r", rtCls.r, "Class smoothness r")->required();
  ratesCmd->add_option("--tau", rtCls.tau, "Class fine index tau (number or \"inf\")");
  ratesCmd->add_option("--q", rtQ, "Target integrability exponents")->delimiter(',')->required();
  ratesCmd->add_option("--target-p", rtTargetP, "Error norm exponents (default: q)")
      ->delimiter(',');
  ratesCmd->add_option("--target-theta", rtTargetTheta, "Error norm fine exponents")
      ->delimiter(',');
  ratesCmd->add_option("--M", rtMs, "Budgets, increasing powers of 2^m")
      ->delimiter(',')
      ->required();
  ratesCmd->add_option("--band", rtBand, "Relative slope tolerance")->check(CLI::PositiveNumber);
  ratesCmd->add_flag("--no-certificates", rtNoCert, "Skip dual certificates");
  ratesCmd->add_flag("--dry-run", rtDryRun, "Print the budget plans and exit");
  ratesCmd->add_option("--report", rtReport, "Write the JSON report here");
  ratesCmd->add_option("--csv", rtCsv, "Write the points table here");
  ratesCmd->add_option("--plot-data", rtPlot, "Write gnuplot-ready log-log data here");

  // check
  auto* checkCmd = app.add_subcommand("check", "Inequality check suites (informative)");
  checkCmd->fallthrough();
  std::string ckSuite, ckOut;
  std::uint64_t ckSeed = 1;
  int ckTrials = 50, ckM = 1, ckModes = 64, ckMaxfreq = 32;
  double ckP = 1.5, ckQ = 4.0;
  checkCmd->add_option("--suite", ckSuite, "littlewood-paley | metrics | lemma1 | certificate")
      ->required()
      ->check(CLI::IsMember({"littlewood-paley", "metrics", "lemma1", "certificate"}));
  checkCmd->add_option("--seed", ckSeed, "Base seed; trial t uses seed + t");
  checkCmd->add_option("--trials", ckTrials, "Number of random trials");
  checkCmd->add_option("--m", ckM, "Dimensions of the random spectra")->check(CLI::Range(1, 4));
  checkCmd->add_option("--p", ckP, "Primary exponent for the suite");
  checkCmd->add_option("--q", ckQ, "Secondary exponent for the suite");
  checkCmd->add_option("--modes", ckModes, "Support size of the random spectra");
  checkCmd->add_option("--maxfreq", ckMaxfreq, "Frequency box radius of the random spectra");
  checkCmd->add_option("--out", ckOut, "Write the JSON report here (default: stdout)");

  // testfn
  auto* testfnCmd = app.add_subcommand("testfn", "Emit a test function as spectrum CSV");
  testfnCmd->fallthrough();
  std::string tfKind, tfProfile = "flat", tfOut;
  int tfL = 3, tfN = 3, tfM = 1, tfBand = 8, tfMaxfreq = 16, tfCount = 32;
  double tfR = 1.0;
  ClassOpts tfCls;
  std::uint64_t tfSeed = 1;
  testfnCmd->add_option("--kind", tfKind,
                        "dirichlet | g1 | f3 | rudin-shapiro | lacunary | random")
      ->required();
  testfnCmd->add_option("--l", tfL, "Cube radius exponent (dirichlet)");
  testfnCmd->add_option("--n", tfN, "Block count (g1, f3, rudin-shapiro)");
  testfnCmd->add_option("--m", tfM, "Dimensions")->check(CLI::Range(1, 4));
  testfnCmd->add_option("--r", tfR, "Smoothness parameter");
  testfnCmd->add_option("--class-p", tfCls.p, "Class exponents p (f3, lacunary)")
      ->delimiter(',');
  testfnCmd->add_option("--class-theta", tfCls.theta, "Class exponents theta")->delimiter(',');
  testfnCmd->add_option("--L", tfBand, "Lacunary band limit");
  testfnCmd->add_option("--seed", tfSeed, "Random seed");
  testfnCmd->add_option("--profile", tfProfile, "flat | spiky (lacunary)");
  testfnCmd->add_option("--maxfreq", tfMaxfreq, "Frequency box radius (random)");
  testfnCmd->add_option("--count", tfCount, "Mode count (random)");
  testfnCmd->add_option("--out", tfOut, "Output spectrum CSV")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand(normCmd))
      return run_norm(common, normGrid, normSpectrum, normConstant, constOpt->count() > 0,
                      normP, normTheta, normPlain, normJson);
    if (app.got_subcommand(approxCmd))
      return run_approx(common, apSpectrum, apScheme, apM, apCls, apQ, apTargetP,
                        apTargetTheta, apOut);
    if (app.got_subcommand(ratesCmd))
      return run_rates(common, rtFamily, rtL, rtSeed, rtScheme, rtCls, rtQ, rtTargetP,
                       rtTargetTheta, rtMs, rtBand, rtNoCert, rtDryRun, rtReport, rtCsv,
                       rtPlot);
    if (app.got_subcommand(checkCmd))
      return run_check(common, ckSuite, ckSeed, ckTrials, ckM, ckP, ckQ, ckModes,
                       ckMaxfreq, ckOut);
    if (app.got_subcommand(testfnCmd))
      return run_testfn(common, tfKind, tfL, tfN, tfM, tfR, tfCls, tfBand, tfSeed,
                        tfProfile, tfMaxfreq, tfCount, tfOut);
  } catch (const DegenerateFit& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
