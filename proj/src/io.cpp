#include "mixterm/io.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <json.hpp>

namespace mixterm {

namespace {

using nlohmann::json;

constexpr char kMagic[4] = {'M', 'X', 'T', 'G'};
constexpr std::uint32_t kBinaryVersion = 1;

void write_meta_comments(std::ostream& os, const ArtifactMeta& meta) {
  os << "# version=" << kVersion << "\n";
  os << "# config=" << meta.config << "\n";
  os << "# seed=" << meta.seed << "\n";
  os << "# grid=" << meta.grid << "\n";
}

json meta_json(const ArtifactMeta& meta) {
  return json{{"version", kVersion},
              {"config", meta.config},
              {"seed", meta.seed},
              {"grid", meta.grid}};
}

json plan_json(const BudgetPlan& plan) {
  return json{{"n", plan.n},
              {"alpha", plan.alpha},
              {"regime", regime_name(plan.regime)},
              {"windowLo", plan.windowLo},
              {"windowHi", plan.windowHi},
              {"counts", plan.counts},
              {"degenerate", plan.degenerate},
              {"total", plan.total}};
}

std::ofstream open_out(const std::string& path, std::ios::openmode mode = std::ios::out) {
  std::ofstream os(path, mode);
  if (!os) throw std::runtime_error("cannot open for writing: " + path);
  return os;
}

std::ifstream open_in(const std::string& path, std::ios::openmode mode = std::ios::in) {
  std::ifstream is(path, mode);
  if (!is) throw std::runtime_error("cannot open for reading: " + path);
  return is;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream is(line);
  while (std::getline(is, field, ',')) out.push_back(field);
  return out;
}

}  // namespace

const char* scheme_name(SchemeKind k) {
  switch (k) {
    case SchemeKind::Greedy: return "greedy";
    case SchemeKind::BlockBudget: return "block-budget";
    case SchemeKind::Truncation: return "truncation";
  }
  return "unknown";
}

const char* regime_name(Regime r) {
  switch (r) {
    case Regime::One: return "regime1";
    case Regime::Two: return "regime2";
    case Regime::Three: return "regime3";
    case Regime::BelowTwo: return "below2";
    case Regime::AboveTwo: return "above2";
    case Regime::Unsupported: return "unsupported";
  }
  return "unknown";
}

void write_grid_binary(const GridFunction& g, const std::string& path) {
  auto os = open_out(path, std::ios::binary);
  os.write(kMagic, 4);
  const std::uint32_t version = kBinaryVersion;
  const std::uint32_t dims = static_cast<std::uint32_t>(g.dims());
  os.write(reinterpret_cast<const char*>(&version), sizeof version);
  os.write(reinterpret_cast<const char*>(&dims), sizeof dims);
  for (int a = 0; a < g.dims(); ++a) {
    const std::uint64_t n = static_cast<std::uint64_t>(g.shape().n[a]);
    os.write(reinterpret_cast<const char*>(&n), sizeof n);
  }
  os.write(reinterpret_cast<const char*>(g.data()),
           static_cast<std::streamsize>(g.total() * sizeof(Coeff)));
  if (!os) throw std::runtime_error("write failed: " + path);
}

GridFunction read_grid_binary(const std::string& path) {
  auto is = open_in(path, std::ios::binary);
  char magic[4];
  std::uint32_t version = 0, dims = 0;
  is.read(magic, 4);
  is.read(reinterpret_cast<char*>(&version), sizeof version);
  is.read(reinterpret_cast<char*>(&dims), sizeof dims);
  if (!is || std::string(magic, 4) != std::string(kMagic, 4))
    throw std::runtime_error("not a grid file: " + path);
  if (version != kBinaryVersion)
    throw std::runtime_error("unsupported grid file version: " + path);
  if (dims < 1 || dims > static_cast<std::uint32_t>(kMaxDims))
    throw std::runtime_error("grid file dims out of range: " + path);
  GridShape sh;
  sh.dims = static_cast<int>(dims);
  std::uint64_t total = 1;
  for (std::uint32_t a = 0; a < dims; ++a) {
    std::uint64_t n = 0;
    is.read(reinterpret_cast<char*>(&n), sizeof n);
    if (!is || n > (std::uint64_t{1} << 30))
      throw std::runtime_error("grid file sizes out of range: " + path);
    sh.n[a] = static_cast<int>(n);
    total *= n;
  }
  sh.validate();
  if (total > (std::uint64_t{1} << 30))
    throw std::runtime_error("grid file too large: " + path);
  GridFunction g(sh);
  is.read(reinterpret_cast<char*>(g.data()),
          static_cast<std::streamsize>(g.total() * sizeof(Coeff)));
  if (!is) throw std::runtime_error("grid file truncated: " + path);
  return g;
}

void write_grid_csv(const GridFunction& g, const std::string& path,
                    const ArtifactMeta& meta) {
  auto os = open_out(path);
  os << std::setprecision(17);
  write_meta_comments(os, meta);
  const int m = g.dims();
  for (int a = 0; a < m; ++a) os << "i" << (a + 1) << ",";
  os << "re,im\n";
  std::array<int, kMaxDims> idx{};
  for (std::size_t lin = 0; lin < g.total(); ++lin) {
    for (int a = 0; a < m; ++a) os << idx[a] << ",";
    const Coeff v = g.data()[lin];
    os << v.real() << "," << v.imag() << "\n";
    for (int a = 0; a < m; ++a) {
      if (++idx[a] < g.shape().n[a]) break;
      idx[a] = 0;
    }
  }
  if (!os) throw std::runtime_error("write failed: " + path);
}

void write_spectrum_csv(const Spectrum& s, const std::string& path,
                        const ArtifactMeta& meta) {
  auto os = open_out(path);
  os << std::setprecision(17);
  write_meta_comments(os, meta);
  const int m = s.dims();
  for (int a = 0; a < m; ++a) os << "k" << (a + 1) << ",";
  os << "re,im\n";
  for (const auto& [f, c] : s) {
    for (int a = 0; a < m; ++a) os << f.k[a] << ",";
    os << c.real() << "," << c.imag() << "\n";
  }
  if (!os) throw std::runtime_error("write failed: " + path);
}

Spectrum read_spectrum_csv(const std::string& path) {
  auto is = open_in(path);
  std::string line;
  int dims = -1;
  Spectrum out(1);
  std::size_t lineNo = 0;
  while (std::getline(is, line)) {
    ++lineNo;
    if (line.empty() || line[0] == '#') continue;
    const auto fields = split_csv(line);
    if (dims < 0) {  // header row
      dims = static_cast<int>(fields.size()) - 2;
      if (dims < 1 || dims > kMaxDims || fields[0].empty() || fields[0][0] != 'k')
        throw std::runtime_error("bad spectrum header in " + path);
      out = Spectrum(dims);
      continue;
    }
    if (static_cast<int>(fields.size()) != dims + 2)
      throw std::runtime_error("bad spectrum row " + std::to_string(lineNo) + " in " + path);
    try {
      FreqVec f{};
      f.dims = dims;
      for (int a = 0; a < dims; ++a) f.k[a] = static_cast<std::int32_t>(std::stol(fields[a]));
      out.set(f, Coeff(std::stod(fields[dims]), std::stod(fields[dims + 1])));
    } catch (const std::logic_error&) {
      throw std::runtime_error("bad spectrum row " + std::to_string(lineNo) + " in " + path);
    }
  }
  if (dims < 0) throw std::runtime_error("no header in " + path);
  return out;
}

void write_approximant(const Approximant& a, const std::string& prefix,
                       const ArtifactMeta& meta) {
  write_spectrum_csv(a.part, prefix + ".csv", meta);
  json j;
  j["meta"] = meta_json(meta);
  j["kind"] = scheme_name(a.kind);
  j["budget"] = a.budget;
  j["kept"] = a.part.size();
  j["truncationLevel"] = a.truncationLevel;
  if (a.plan) j["plan"] = plan_json(*a.plan);
  auto os = open_out(prefix + "_plan.json");
  os << j.dump(2) << "\n";
  if (!os) throw std::runtime_error("write failed: " + prefix + "_plan.json");
}

namespace {

json fit_json(const FitResult& f) {
  return json{{"slope", f.slope}, {"intercept", f.intercept}, {"r2", f.r2}};
}

}  // namespace

std::string rate_report_json(const RateResult& r, const ArtifactMeta& meta) {
  json pts = json::array();
  for (const RatePoint& pt : r.points) {
    pts.push_back(json{{"M", pt.M},
                       {"error", pt.error},
                       {"certificate", pt.certificate},
                       {"kept", pt.kept},
                       {"planN", pt.planN},
                       {"alpha", pt.alpha},
                       {"degenerate", pt.degenerate}});
  }
  json j;
  j["meta"] = meta_json(meta);
  j["points"] = pts;
  j["fit"] = fit_json(r.fit);
  if (r.compensated) j["logFit"] = fit_json(r.logFit);
  j["predictedSlope"] = r.predictedSlope;
  j["predictedLog"] = r.predictedLog;
  j["regime"] = regime_name(r.regime);
  j["compensated"] = r.compensated;
  return j.dump(2) + "\n";
}

std::string rate_report_csv(const RateResult& r, const ArtifactMeta& meta) {
  std::ostringstream os;
  os << std::setprecision(17);
  write_meta_comments(os, meta);
  os << "# regime=" << regime_name(r.regime) << " slope=" << r.fit.slope
     << " predicted=" << r.predictedSlope << " compensated=" << (r.compensated ? 1 : 0)
     << "\n";
  os << "M,error,certificate,kept,planN,alpha,degenerate\n";
  for (const RatePoint& pt : r.points) {
    os << pt.M << "," << pt.error << "," << pt.certificate << "," << pt.kept << ","
       << pt.planN << "," << pt.alpha << "," << (pt.degenerate ? 1 : 0) << "\n";
  }
  return os.str();
}

std::string rate_plot_data(const RateResult& r) {
  std::ostringstream os;
  os << std::setprecision(17);
  os << "# log2(M) log2(error)\n";
  for (const RatePoint& pt : r.points)
    os << std::log2(static_cast<double>(pt.M)) << " " << std::log2(pt.error) << "\n";
  return os.str();
}

}  // namespace mixterm
