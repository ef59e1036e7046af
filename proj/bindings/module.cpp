#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <algorithm>
#include <cstring>
#include <optional>
#include <stdexcept>
#include <vector>

#include "mixterm/io.hpp"
#include "mixterm/parallel.hpp"

namespace py = pybind11;
using namespace mixterm;

namespace {

FreqVec to_freq(const std::vector<int>& k) {
  if (k.empty() || k.size() > kMaxDims)
    throw std::invalid_argument("frequency vectors have 1 to 4 components");
  FreqVec f{};
  f.dims = static_cast<int>(k.size());
  for (std::size_t j = 0; j < k.size(); ++j)
    f.k[j] = static_cast<std::int32_t>(k[j]);
  return f;
}

py::tuple from_freq(const FreqVec& k) {
  py::tuple t(k.dims);
  for (int j = 0; j < k.dims; ++j) t[static_cast<std::size_t>(j)] = k.k[j];
  return t;
}

std::vector<LorentzExponents> exps_of(const std::vector<double>& p,
                                      const std::optional<std::vector<double>>& theta) {
  std::vector<double> th = theta ? *theta : p;
  if (th.size() != p.size())
    throw std::invalid_argument("theta needs one value per p entry");
  std::vector<LorentzExponents> out;
  for (std::size_t j = 0; j < p.size(); ++j) {
    LorentzExponents e{p[j], th[j]};
    e.validate();
    out.push_back(e);
  }
  return out;
}

using ComplexArray = py::array_t<std::complex<double>, py::array::c_style | py::array::forcecast>;

// Numpy arrays are C-ordered (last axis contiguous) while grid storage keeps
// axis 1 contiguous, so the numpy shape is the grid shape reversed.
GridFunction to_grid(const ComplexArray& arr) {
  const py::buffer_info info = arr.request();
  if (info.ndim < 1 || info.ndim > static_cast<py::ssize_t>(kMaxDims))
    throw std::invalid_argument("arrays of 1 to 4 axes are supported");
  GridShape sh;
  sh.dims = static_cast<int>(info.ndim);
  for (int a = 0; a < sh.dims; ++a)
    sh.n[static_cast<std::size_t>(a)] =
        static_cast<int>(info.shape[static_cast<std::size_t>(sh.dims - 1 - a)]);
  sh.validate();
  GridFunction g(sh);
  std::memcpy(g.data(), info.ptr, sizeof(Coeff) * static_cast<std::size_t>(g.total()));
  return g;
}

py::array from_grid(const GridFunction& g) {
  std::vector<py::ssize_t> shape;
  for (int a = g.dims() - 1; a >= 0; --a)
    shape.push_back(static_cast<py::ssize_t>(g.shape().n[static_cast<std::size_t>(a)]));
  py::array_t<std::complex<double>> arr(shape);
  std::memcpy(arr.mutable_data(), g.samples().data(),
              sizeof(Coeff) * static_cast<std::size_t>(g.total()));
  return arr;
}

BesovParams class_of(const std::vector<double>& p,
                     const std::optional<std::vector<double>>& theta, double r, double tau) {
  BesovParams cls;
  cls.axes = exps_of(p, theta);
  cls.r = r;
  cls.tau = tau;
  cls.validate();
  return cls;
}

SchemeKind scheme_of(const std::string& s) {
  if (s == "greedy") return SchemeKind::Greedy;
  if (s == "block-budget") return SchemeKind::BlockBudget;
  if (s == "truncation") return SchemeKind::Truncation;
  throw std::invalid_argument("unknown scheme: " + s);
}

py::dict plan_dict(const BudgetPlan& plan) {
  py::dict d;
  d["n"] = plan.n;
  d["alpha"] = plan.alpha;
  d["regime"] = std::string(regime_name(plan.regime));
  d["window_lo"] = plan.windowLo;
  d["window_hi"] = plan.windowHi;
  d["counts"] = plan.counts;
  d["degenerate"] = plan.degenerate;
  d["total"] = plan.total;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Mixed-norm Lorentz functionals and M-term approximation of "
            "multivariate trigonometric polynomials";
  m.attr("__version__") = kVersion;

  py::class_<Spectrum>(m, "Spectrum")
      .def(py::init<int>(), py::arg("dims") = 1)
      .def("set",
           [](Spectrum& sp, const std::vector<int>& k, std::complex<double> c) {
             sp.set(to_freq(k), c);
           })
      .def("add",
           [](Spectrum& sp, const std::vector<int>& k, std::complex<double> c) {
             sp.add(to_freq(k), c);
           })
      .def("get",
           [](const Spectrum& sp, const std::vector<int>& k) { return sp.get(to_freq(k)); })
      .def("__len__", [](const Spectrum& sp) { return sp.size(); })
      .def("dims", &Spectrum::dims)
      .def("max_freq", &Spectrum::maxFreq, py::arg("axis"))
      .def("scale", &Spectrum::scale, py::arg("factor"))
      .def("items",
           [](const Spectrum& sp) {
             py::list out;
             for (const auto& [k, c] : sp) out.append(py::make_tuple(from_freq(k), c));
             return out;
           })
      .def("__repr__", [](const Spectrum& sp) {
        return "<Spectrum dims=" + std::to_string(sp.dims()) +
               " modes=" + std::to_string(sp.size()) + ">";
      });

  m.def(
      "mixed_lorentz",
      [](const ComplexArray& arr, const std::vector<double>& p,
         const std::optional<std::vector<double>>& theta, int threads) {
        return mixed_lorentz(to_grid(arr), exps_of(p, theta), threads);
      },
      py::arg("samples"), py::arg("p"), py::arg("theta") = py::none(), py::arg("threads") = 1);
  m.def(
      "mixed_lebesgue",
      [](const ComplexArray& arr, const std::vector<double>& p, int threads) {
        return mixed_lebesgue(to_grid(arr), p, threads);
      },
      py::arg("samples"), py::arg("p"), py::arg("threads") = 1);
  m.def(
      "norm_of",
      [](const Spectrum& sp, const std::vector<double>& p,
         const std::optional<std::vector<double>>& theta, int oversample, int threads) {
        const GridFunction g = synthesize(sp, grid_for(sp, oversample), threads);
        return mixed_lorentz(g, exps_of(p, theta), threads);
      },
      py::arg("spectrum"), py::arg("p"), py::arg("theta") = py::none(),
      py::arg("oversample") = 4, py::arg("threads") = 1);

  m.def(
      "synthesize",
      [](const Spectrum& sp, int oversample, int threads) {
        return from_grid(synthesize(sp, grid_for(sp, oversample), threads));
      },
      py::arg("spectrum"), py::arg("oversample") = 4, py::arg("threads") = 1);
  m.def(
      "analyze",
      [](const ComplexArray& arr, int threads) { return analyze(to_grid(arr), threads); },
      py::arg("samples"), py::arg("threads") = 1);

  m.def("block_of", [](const std::vector<int>& k) { return block_of(to_freq(k)); },
        py::arg("k"));
  m.def(
      "block_norm_profile",
      [](const Spectrum& sp, const std::vector<double>& p,
         const std::optional<std::vector<double>>& theta, int oversample, int threads) {
        return block_norm_profile(sp, exps_of(p, theta), oversample, threads);
      },
      py::arg("spectrum"), py::arg("p"), py::arg("theta") = py::none(),
      py::arg("oversample") = 4, py::arg("threads") = 1);
  m.def(
      "besov_seminorm",
      [](const Spectrum& sp, const std::vector<double>& p,
         const std::optional<std::vector<double>>& theta, double r, double tau,
         int oversample, int threads) {
        return besov_seminorm(sp, class_of(p, theta, r, tau), oversample, threads);
      },
      py::arg("spectrum"), py::arg("p"), py::arg("theta") = py::none(), py::arg("r") = 1.0,
      py::arg("tau") = 1.0, py::arg("oversample") = 4, py::arg("threads") = 1);

  m.def("regime_of",
        [](const std::vector<double>& p, const std::vector<double>& q, double r) {
          return std::string(regime_name(regime_of(p, q, r)));
        },
        py::arg("p"), py::arg("q"), py::arg("r"));
  m.def("decay_exponent",
        [](const std::vector<double>& p, const std::vector<double>& q, double r,
           double tau) {
          const auto [mExp, logExp] = decay_exponent(p, q, r, tau);
          return py::make_tuple(mExp, logExp);
        },
        py::arg("p"), py::arg("q"), py::arg("r"), py::arg("tau") = 1.0);
  m.def(
      "budget_plan",
      [](const std::vector<double>& p, const std::optional<std::vector<double>>& theta,
         double r, double tau, const std::vector<double>& q, std::uint64_t M,
         const std::vector<double>& profile) {
        return plan_dict(budget_plan(class_of(p, theta, r, tau), q, M, profile));
      },
      py::arg("p"), py::arg("theta"), py::arg("r"), py::arg("tau"), py::arg("q"),
      py::arg("M"), py::arg("profile") = std::vector<double>{});

  m.def("greedy_select",
        [](const Spectrum& sp, std::uint64_t M) {
          py::list out;
          for (const auto& k : greedy_select(sp, M)) out.append(from_freq(k));
          return out;
        },
        py::arg("spectrum"), py::arg("M"));
  m.def(
      "approximate",
      [](const Spectrum& sp, const std::string& scheme, std::uint64_t M,
         const std::optional<std::vector<double>>& classP,
         const std::optional<std::vector<double>>& classTheta, double r, double tau,
         const std::optional<std::vector<double>>& q, int oversample, int threads) {
        SchemeSpec spec;
        spec.kind = scheme_of(scheme);
        if (spec.kind == SchemeKind::BlockBudget) {
          if (!classP || !q)
            throw std::invalid_argument("block-budget requires class_p and q");
          spec.cls = class_of(*classP, classTheta, r, tau);
          spec.q = *q;
        }
        const Approximant a = build_approximant(sp, spec, M, oversample, threads);
        py::dict d;
        d["part"] = a.part;
        d["kept"] = a.part.size();
        d["truncation_level"] = a.truncationLevel;
        if (a.plan) d["plan"] = plan_dict(*a.plan);
        return d;
      },
      py::arg("spectrum"), py::arg("scheme"), py::arg("M"), py::arg("class_p") = py::none(),
      py::arg("class_theta") = py::none(), py::arg("r") = 1.0, py::arg("tau") = 1.0,
      py::arg("q") = py::none(), py::arg("oversample") = 4, py::arg("threads") = 1);
  m.def(
      "error_between",
      [](const Spectrum& sp, const Spectrum& part, const std::vector<double>& p,
         const std::optional<std::vector<double>>& theta, int oversample, int threads) {
        Approximant a;
        a.kind = SchemeKind::Greedy;
        a.budget = part.size();
        a.part = part;
        return approximation_error(sp, a, exps_of(p, theta), oversample, threads);
      },
      py::arg("spectrum"), py::arg("part"), py::arg("p"), py::arg("theta") = py::none(),
      py::arg("oversample") = 4, py::arg("threads") = 1);
  m.def(
      "dual_certificate",
      [](const Spectrum& sp, const std::vector<std::vector<int>>& omega, double p,
         double theta, int oversample, int threads) {
        FreqSet os;
        for (const auto& k : omega) os.insert(to_freq(k));
        LorentzExponents e{p, theta};
        e.validate();
        return dual_certificate(sp, os, e, oversample, threads);
      },
      py::arg("spectrum"), py::arg("omega"), py::arg("p"), py::arg("theta"),
      py::arg("oversample") = 4, py::arg("threads") = 1);

  m.def("dirichlet_cubic", &dirichlet_cubic, py::arg("l"), py::arg("dims") = 1);
  m.def("g1", &g1, py::arg("n"), py::arg("dims") = 1);
  m.def("f3", &f3, py::arg("n"), py::arg("dims"), py::arg("p"), py::arg("r"));
  m.def("rudin_shapiro_product", &rudin_shapiro_product, py::arg("n"), py::arg("dims"),
        py::arg("r"));
  m.def(
      "lacunary_random",
      [](const std::vector<double>& p, const std::optional<std::vector<double>>& theta,
         double r, double tau, int L, std::uint64_t seed, const std::string& profile,
         int oversample, int threads) {
        BlockProfile bp = BlockProfile::Flat;
        if (profile == "spiky") bp = BlockProfile::Spiky;
        else if (profile != "flat") throw std::invalid_argument("profile is flat or spiky");
        return lacunary_random(class_of(p, theta, r, tau), L, seed, bp, oversample, threads);
      },
      py::arg("p"), py::arg("theta"), py::arg("r"), py::arg("tau"), py::arg("L"),
      py::arg("seed"), py::arg("profile") = "flat", py::arg("oversample") = 4,
      py::arg("threads") = 1);
  m.def("random_spectrum", &random_spectrum, py::arg("dims"), py::arg("maxfreq"),
        py::arg("count"), py::arg("seed"));

  m.def("loglog_fit",
        [](const std::vector<double>& x, const std::vector<double>& y) {
          const FitResult fit = loglog_fit(x, y);
          return py::make_tuple(fit.slope, fit.intercept, fit.r2);
        },
        py::arg("x"), py::arg("y"));
  m.def(
      "check_littlewood_paley",
      [](const Spectrum& sp, double p, int oversample, int threads) {
        return check_littlewood_paley(sp, p, oversample, threads);
      },
      py::arg("spectrum"), py::arg("p"), py::arg("oversample") = 4, py::arg("threads") = 1);
  m.def(
      "check_lemma1",
      [](const Spectrum& sp, std::uint64_t M, double q, int oversample, int threads) {
        return check_lemma1(sp, M, q, oversample, threads);
      },
      py::arg("spectrum"), py::arg("M"), py::arg("q"), py::arg("oversample") = 4,
      py::arg("threads") = 1);
}
