#include <doctest.h>

#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "mixterm/io.hpp"
#include "mixterm/spectral.hpp"
#include "mixterm/testfns.hpp"

using namespace mixterm;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("mixterm_io_test_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

std::string slurp(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

ArtifactMeta meta() {
  ArtifactMeta m;
  m.config = "p=1.5,theta=1.5";
  m.seed = 7;
  m.grid = "oversample=4";
  return m;
}

}  // namespace

TEST_CASE("grid binary round trip") {
  TempDir dir;
  Spectrum sp = random_spectrum(2, 3, 9, 31);
  GridFunction g = synthesize(sp, GridShape::of({8, 16}));
  const std::string path = dir.file("grid.bin");
  write_grid_binary(g, path);

  GridFunction back = read_grid_binary(path);
  REQUIRE(back.dims() == 2);
  REQUIRE(back.shape().n[0] == 8);
  REQUIRE(back.shape().n[1] == 16);
  for (std::size_t i = 0; i < g.total(); ++i) CHECK(back.data()[i] == g.data()[i]);

  SUBCASE("writes are byte-identical across calls") {
    const std::string again = dir.file("grid2.bin");
    write_grid_binary(g, again);
    CHECK(slurp(path) == slurp(again));
  }

  SUBCASE("corrupt magic is rejected") {
    std::fstream f(path, std::ios::in | std::ios::out | std::ios::binary);
    f.seekp(0);
    f.write("BOGUS", 4);
    f.close();
    CHECK_THROWS_AS(read_grid_binary(path), std::runtime_error);
  }

  SUBCASE("truncated payload is rejected") {
    const std::string cut = dir.file("cut.bin");
    const std::string full = slurp(path);
    std::ofstream os(cut, std::ios::binary);
    os.write(full.data(), static_cast<std::streamsize>(full.size() - 9));
    os.close();
    CHECK_THROWS_AS(read_grid_binary(cut), std::runtime_error);
  }

  SUBCASE("missing file is rejected") {
    CHECK_THROWS_AS(read_grid_binary(dir.file("absent.bin")), std::runtime_error);
  }
}

TEST_CASE("spectrum csv round trip is exact") {
  TempDir dir;
  Spectrum sp = random_spectrum(2, 6, 17, 99);
  const std::string path = dir.file("spec.csv");
  write_spectrum_csv(sp, path, meta());

  Spectrum back = read_spectrum_csv(path);
  REQUIRE(back.dims() == 2);
  REQUIRE(back.size() == sp.size());
  // 17 significant digits survive the text round trip bit for bit
  for (const auto& [k, c] : sp) CHECK(back.get(k) == c);

  SUBCASE("metadata comments are present") {
    const std::string text = slurp(path);
    CHECK(text.find("# version=0.1.0") != std::string::npos);
    CHECK(text.find("# seed=7") != std::string::npos);
    CHECK(text.find("k1,k2,re,im") != std::string::npos);
  }

  SUBCASE("malformed rows are rejected") {
    const std::string bad = dir.file("bad.csv");
    std::ofstream os(bad);
    os << "k1,re,im\n1,0.5\n";
    os.close();
    CHECK_THROWS_AS(read_spectrum_csv(bad), std::runtime_error);

    const std::string nonnum = dir.file("nonnum.csv");
    std::ofstream os2(nonnum);
    os2 << "k1,re,im\nx,0.5,0.5\n";
    os2.close();
    CHECK_THROWS_AS(read_spectrum_csv(nonnum), std::runtime_error);

    const std::string empty = dir.file("empty.csv");
    std::ofstream os3(empty);
    os3 << "# only comments\n";
    os3.close();
    CHECK_THROWS_AS(read_spectrum_csv(empty), std::runtime_error);
  }
}

TEST_CASE("approximant artifacts") {
  TempDir dir;
  Spectrum sp = random_spectrum(1, 30, 40, 12);
  SchemeSpec scheme;
  scheme.kind = SchemeKind::BlockBudget;
  scheme.cls.axes = {{1.5, 1.5}};
  scheme.cls.r = 0.5;
  scheme.q = {4.0};
  Approximant a = build_approximant(sp, scheme, 16);
  const std::string prefix = dir.file("approx");
  write_approximant(a, prefix, meta());

  Spectrum part = read_spectrum_csv(prefix + ".csv");
  CHECK(part.size() == a.part.size());
  for (const auto& [k, c] : a.part) CHECK(part.get(k) == c);

  const auto j = nlohmann::json::parse(slurp(prefix + "_plan.json"));
  CHECK(j.at("kind") == "block-budget");
  CHECK(j.at("budget") == 16);
  CHECK(j.at("kept") == a.part.size());
  CHECK(j.at("meta").at("version") == kVersion);
  CHECK(j.at("meta").at("seed") == 7);
  REQUIRE(j.contains("plan"));
  CHECK(j.at("plan").at("n") == a.plan->n);
  CHECK(j.at("plan").at("regime") == "regime1");
  CHECK(j.at("plan").at("counts").size() == a.plan->counts.size());
}

TEST_CASE("rate reports") {
  SchemeSpec scheme;
  scheme.kind = SchemeKind::Greedy;
  scheme.cls.axes = {{1.5, 1.5}};
  scheme.cls.r = 2.0 / 3.0;  // exactly sum 1/p_j: the compensated regime
  scheme.cls.tau = 1.0;
  scheme.q = {4.0};
  FamilySpec family;
  family.L = 6;
  const RateResult res =
      rate_experiment(family, scheme, {2, 4, 8, 16}, {{2.0, 2.0}});

  SUBCASE("json schema") {
    const auto j = nlohmann::json::parse(rate_report_json(res, meta()));
    REQUIRE(j.at("points").size() == 4);
    CHECK(j.at("points")[0].contains("M"));
    CHECK(j.at("points")[0].contains("error"));
    CHECK(j.at("points")[0].contains("certificate"));
    CHECK(j.at("fit").contains("slope"));
    CHECK(j.at("regime") == "regime2");
    CHECK(j.at("compensated") == true);
    CHECK(j.contains("logFit"));
    CHECK(j.at("meta").at("grid") == "oversample=4");
  }

  SUBCASE("csv layout") {
    const std::string text = rate_report_csv(res, meta());
    CHECK(text.find("M,error,certificate,kept,planN,alpha,degenerate") !=
          std::string::npos);
    CHECK(text.find("# regime=regime2") != std::string::npos);
    // one row per point plus comments and header
    std::size_t rows = 0;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line))
      if (!line.empty() && line[0] != '#') ++rows;
    CHECK(rows == 5);
  }

  SUBCASE("plot data is two columns of logs") {
    const std::string text = rate_plot_data(res);
    std::istringstream is(text);
    std::string header;
    std::getline(is, header);
    CHECK(header.find("log2") != std::string::npos);
    double x, y;
    std::size_t rows = 0;
    while (is >> x >> y) {
      CHECK(x == std::log2(static_cast<double>(res.points[rows].M)));
      CHECK(y == std::log2(res.points[rows].error));
      ++rows;
    }
    CHECK(rows == 4);
  }

  SUBCASE("reports are deterministic") {
    CHECK(rate_report_json(res, meta()) == rate_report_json(res, meta()));
    CHECK(rate_report_csv(res, meta()) == rate_report_csv(res, meta()));
  }
}

TEST_CASE("name tables") {
  CHECK(std::string(scheme_name(SchemeKind::Greedy)) == "greedy");
  CHECK(std::string(scheme_name(SchemeKind::Truncation)) == "truncation");
  CHECK(std::string(regime_name(Regime::AboveTwo)) == "above2");
  CHECK(std::string(regime_name(Regime::Unsupported)) == "unsupported");
}
