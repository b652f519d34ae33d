#include <Eigen/Dense>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <algorithm>
#include <cstring>
#include <map>
#include <sstream>

#include "doctest.h"
#include "mmfista/harness/benchmark.hpp"
#include "mmfista/harness/degrade.hpp"
#include "mmfista/harness/pgm.hpp"
#include "mmfista/harness/trace_csv.hpp"
#include "mmfista/harness/wiener.hpp"

using namespace mmfista;
namespace fs = std::filesystem;

namespace {

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

fs::path temp_dir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("mmfista_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

SolverTrace synthetic_trace(double F_star, double F0, int n) {
  SolverTrace t;
  for (int k = 0; k <= n; ++k) {
    TraceRecord r;
    r.k = k;
    r.F = k == 0 ? F0 : F_star + (F0 - F_star) / std::pow(k + 0.5, 2);
    r.time_s = 0.01 * k;
    r.work_units = k;
    t.records.push_back(r);
  }
  return t;
}

}  // namespace

TEST_CASE("snr") {
  GridImage ref(Shape{2, 2}, std::vector<double>{1, 0, 0, 0});
  CHECK(snr_db(ref, ref) == kSnrCap);
  CHECK(snr_db(ref, GridImage(ref.shape())) == doctest::Approx(0.0));
  GridImage x = ref;
  x[1] = 0.1;
  CHECK(snr_db(ref, x) == doctest::Approx(20.0));
  CHECK_THROWS_AS(snr_db(GridImage(ref.shape()), x), ParameterError);
}

TEST_CASE("relative time") {
  CHECK(relative_time(3.0, 3.0) == 0.0);
  CHECK(relative_time(1.0, 2.0) == -50.0);
  CHECK(relative_time(1.02, 1.0) == doctest::Approx(2.0));
  CHECK_THROWS_AS(relative_time(1.0, 0.0), ParameterError);
}

TEST_CASE("threshold times against a direct scan") {
  const double F_star = 2.0, F0 = 10.0;
  const SolverTrace t = synthetic_trace(F_star, F0, 500);
  const std::vector<double> qs = {100, 5, 2, 1, 0.1, 0.01, 1e-4};
  const auto hits = threshold_times(t, F_star, F0, qs);
  REQUIRE(hits.size() == qs.size());
  CHECK(hits[0].k == 0);
  for (std::size_t i = 0; i < qs.size(); ++i) {
    std::optional<int> scan;
    for (const auto& r : t.records) {
      if ((r.F - F_star) / (F0 - F_star) * 100.0 <= qs[i]) {
        scan = r.k;
        break;
      }
    }
    CHECK(hits[i].k == scan);
    if (scan) {
      CHECK(hits[i].work_units == *scan);
      CHECK(hits[i].seconds == doctest::Approx(0.01 * *scan));
    }
  }
  CHECK(hits[1].k == 4);  // 1/(k+1/2)^2 <= 0.05 first at k = 4
  CHECK(hits[5].k == 100);
  CHECK_FALSE(hits[6].k.has_value());
  CHECK_THROWS_AS(threshold_times(t, F0, F0, qs), ParameterError);
  CHECK_THROWS_AS(threshold_times(SolverTrace{}, F_star, F0, qs), ParameterError);
}

TEST_CASE("degradation") {
  const Shape shape{32, 32};
  const GridImage x = synthetic_scene(shape);
  double lo = 1e9, hi = -1e9;
  for (std::size_t i = 0; i < x.size(); ++i) {
    lo = std::min(lo, x[i]);
    hi = std::max(hi, x[i]);
  }
  CHECK(lo >= 0.0);
  CHECK(hi <= 1.0);
  CHECK(hi - lo > 0.5);

  const SeparableBlur identity(shape, delta_psf());
  CHECK(norm2(degrade(x, identity, 0.0, 1) - x) == 0.0);

  const SeparableBlur blur(shape, make_gaussian_psf(5, 1.0));
  CHECK(norm2(degrade(x, blur, 0.0, 1) - blur.apply(x)) == 0.0);

  const GridImage a = degrade(x, blur, 0.05, 9);
  const GridImage b = degrade(x, blur, 0.05, 9);
  CHECK(std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0);
  CHECK(norm2(a - degrade(x, blur, 0.05, 10)) > 0.0);
  const double noise_rms = norm2(a - blur.apply(x)) / std::sqrt(static_cast<double>(x.size()));
  CHECK(noise_rms == doctest::Approx(0.05).epsilon(0.1));

  DegradationSpec spec;
  spec.psf_support = 5;
  spec.psf_sigma = 1.0;
  spec.noise_sigma = 0.05;
  spec.seed = 9;
  CHECK(norm2(degrade(x, spec) - a) == 0.0);
}

TEST_CASE("wiener initialization") {
  const Shape shape{16, 16};
  const GridImage x = synthetic_scene(shape);
  const SeparableBlur blur(shape, make_gaussian_psf(5, 1.0));
  const GridImage z = degrade(x, blur, 0.01, 3);
  const double mu = 1e-2;

  const auto v = blur.vertical().to_dense(), h = blur.horizontal().to_dense();
  const RowMatrix V = Eigen::Map<const RowMatrix>(v.data(), 16, 16);
  const RowMatrix H = Eigen::Map<const RowMatrix>(h.data(), 16, 16);
  RowMatrix A(256, 256);
  for (int i = 0; i < 16; ++i)
    for (int j = 0; j < 16; ++j) A.block(i * 16, j * 16, 16, 16) = V(i, j) * H;
  const Eigen::VectorXd zv = Eigen::Map<const Eigen::VectorXd>(z.data(), 256);
  const RowMatrix normal = A.transpose() * A + mu * RowMatrix::Identity(256, 256);
  const Eigen::VectorXd dense = normal.ldlt().solve(A.transpose() * zv);

  // Residual tolerance tol bounds the error by tol ||A^T z|| / mu.
  const double atz = (A.transpose() * zv).norm();
  const WienerResult w = wiener_init(z, blur, mu);
  CHECK(w.converged);
  const Eigen::VectorXd got = Eigen::Map<const Eigen::VectorXd>(w.x.data(), 256);
  CHECK((got - dense).norm() <= 1e-6 * atz / mu);
  const WienerResult tight = wiener_init(z, blur, mu, 1e-13, 1000);
  CHECK(tight.converged);
  const Eigen::VectorXd got_tight = Eigen::Map<const Eigen::VectorXd>(tight.x.data(), 256);
  CHECK((got_tight - dense).norm() <= 1e-10 * dense.norm());

  const SeparableBlur identity(shape, delta_psf());
  const WienerResult tiny = wiener_init(z, identity, 1e-8);
  CHECK(norm2(tiny.x - z) <= 1e-4 * norm2(z));
  const WienerResult huge = wiener_init(z, blur, 1e8);
  CHECK(norm2(huge.x) <= 1e-6 * norm2(z));
  CHECK_THROWS_AS(wiener_init(z, blur, 0.0), ParameterError);

  const WienerResult capped = wiener_init(z, blur, 1e-6, 1e-14, 2);
  CHECK_FALSE(capped.converged);
  CHECK(capped.iterations == 2);
}

TEST_CASE("pgm round trip") {
  const fs::path dir = temp_dir("pgm");
  const GridImage x = synthetic_scene(Shape{16, 32});
  for (int depth : {8, 16}) {
    const std::string path = (dir / ("img" + std::to_string(depth) + ".pgm")).string();
    write_pgm(path, x, depth);
    const GridImage y = read_pgm(path);
    REQUIRE(y.shape() == x.shape());
    const double q = depth == 8 ? 1.0 / 255 : 1.0 / 65535;
    for (std::size_t i = 0; i < x.size(); ++i) CHECK(std::abs(y[i] - x[i]) <= 0.5 * q + 1e-12);
  }
  GridImage out_of_range(Shape{1, 2}, std::vector<double>{-0.5, 1.5});
  write_pgm((dir / "clip.pgm").string(), out_of_range);
  const GridImage clipped = read_pgm((dir / "clip.pgm").string());
  CHECK(clipped[0] == 0.0);
  CHECK(clipped[1] == 1.0);
  CHECK_THROWS_AS(write_pgm((dir / "bad.pgm").string(), x, 12), ParameterError);
  CHECK_THROWS(read_pgm((dir / "missing.pgm").string()));
  std::ofstream((dir / "p2.pgm").string()) << "P2\n2 1\n255\n0 255\n";
  CHECK_THROWS(read_pgm((dir / "p2.pgm").string()));
}

TEST_CASE("trace csv") {
  SolverTrace t = synthetic_trace(0.0, 1.0, 2);
  t.records[1].F_smoothed = kNaN;
  std::ostringstream out;
  write_trace_csv(out, t);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "k,F,F_smoothed,time_s,step_norm,correction_norm,snr_db,work_units");
  int rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    CHECK(std::count(line.begin(), line.end(), ',') == 7);
  }
  CHECK(rows == 3);
}

TEST_CASE("config parsing") {
  const ExperimentConfig cfg = parse_config(R"({
    "image": {"size": 64},
    "degradation": {"psf_support": 21, "psf_sigma": 4.0, "noise_sigma": 0.04, "seed": 5},
    "hierarchy": {"levels": 2, "lambda": 0.001, "wavelet": "sym10"},
    "mmfista": {"m": 3, "p": 2, "coarse": "fb", "tau_bar": "search", "max_iter": 50},
    "benchmark": {"thresholds": [5, 1], "repetitions": 1}
  })");
  CHECK(cfg.image.size == 64);
  CHECK(cfg.degradation.psf_support == 21);
  CHECK(cfg.degradation.seed == 5);
  CHECK(cfg.hierarchy.levels == 2);
  CHECK(cfg.hierarchy.wavelet == "sym10");
  CHECK(cfg.mmfista.p == std::vector<int>{2});
  CHECK(cfg.mmfista.coarse == std::vector<std::string>{"fb"});
  CHECK(std::holds_alternative<TauBarLinesearch>(parse_tau_bar(cfg.mmfista.tau_bar)));
  CHECK(cfg.benchmark.thresholds == std::vector<double>{5, 1});

  const ExperimentConfig numeric = parse_config(R"({"mmfista": {"tau_bar": 0.5}})");
  CHECK(std::get<TauBarFixed>(parse_tau_bar(numeric.mmfista.tau_bar)).value == 0.5);

  const ExperimentConfig round = parse_config(to_json(cfg));
  CHECK(to_json(round) == to_json(cfg));

  CHECK_THROWS_AS(parse_config(R"({"solver": {}})"), ParameterError);
  CHECK_THROWS_AS(parse_config(R"({"mmfista": {"mm": 5}})"), ParameterError);
  CHECK_THROWS_AS(parse_config(R"({"hierarchy": {"levels": "three"}})"), ParameterError);
  CHECK_THROWS_AS(parse_config(R"({"mmfista": {"coarse": ["newton"]}})"), ParameterError);
  CHECK_THROWS_AS(parse_config(R"({"mmfista": {"tau_bar": -1}})"), ParameterError);
  CHECK_THROWS_AS(parse_config("{not json"), ParameterError);
  CHECK_THROWS_AS(parse_tau_bar("fast"), ParameterError);
}

TEST_CASE("small benchmark end to end") {
  ExperimentConfig cfg;
  cfg.image.size = 64;
  cfg.hierarchy.levels = 3;
  cfg.hierarchy.lambda_grid = {1e-3, 5e-3};
  cfg.mmfista.p = {0, 1};
  cfg.mmfista.coarse = {"smoothed", "fista"};
  cfg.mmfista.max_iter = 150;
  cfg.benchmark.oracle_iterations = 1500;
  cfg.benchmark.repetitions = 3;
  cfg.benchmark.grid_iterations = 50;
  const fs::path dir = temp_dir("bench");
  const BenchmarkReport report = run_benchmark(cfg, dir.string());

  CHECK((report.lambda == 1e-3 || report.lambda == 5e-3));
  REQUIRE(report.rows.size() == 4);
  CHECK(report.rows[0].name == "fista");
  CHECK(report.rows[1].name == "mmfista_p0");
  CHECK(report.rows[2].name == "mmfista_smoothed_p1");
  CHECK(report.F0 > report.F_star);

  const BenchmarkRow& fista = report.rows[0];
  const BenchmarkRow& p0 = report.rows[1];
  REQUIRE(p0.trace.records.size() == fista.trace.records.size());
  for (std::size_t k = 0; k < p0.trace.records.size(); ++k) {
    CHECK(p0.trace.records[k].F == fista.trace.records[k].F);
    CHECK(p0.trace.records[k].work_units == fista.trace.records[k].work_units);
  }
  for (std::size_t i = 0; i < report.thresholds.size(); ++i) {
    if (p0.hits[i].k) CHECK(p0.relative_work[i] == 0.0);
  }

  for (const auto& row : report.rows) {
    CHECK(row.snr_final > report.snr_z);
    for (std::size_t i = 0; i < report.thresholds.size(); ++i) {
      if (row.hits[i].k && fista.hits[i].k)
        CHECK(row.relative_time[i] == relative_time(row.hits[i].seconds, fista.hits[i].seconds));
    }
  }

  for (const auto& row : report.rows) CHECK(fs::exists(dir / ("trace_" + row.name + ".csv")));
  CHECK(fs::exists(dir / "report.txt"));

  // Reported relative times are recomputable from the CSV's absolute columns.
  std::ifstream csv(dir / "report.csv");
  std::string line;
  std::getline(csv, line);
  std::map<std::pair<std::string, std::string>, double> seconds;
  std::vector<std::vector<std::string>> rows;
  while (std::getline(csv, line)) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    while (cells.size() < 16) cells.emplace_back();
    rows.push_back(cells);
    if (!cells[5].empty()) seconds[{cells[0], cells[3]}] = std::stod(cells[5]);
  }
  CHECK(rows.size() == report.rows.size() * report.thresholds.size());
  for (const auto& cells : rows) {
    if (cells[7].empty()) continue;
    const double t_mm = seconds.at({cells[0], cells[3]});
    const double t_fi = seconds.at({"fista", cells[3]});
    CHECK(relative_time(t_mm, t_fi) == std::stod(cells[7]));
  }

  // Determinism of everything except timing.
  const BenchmarkReport again = run_benchmark(cfg);
  for (std::size_t r = 0; r < report.rows.size(); ++r) {
    const auto& a = report.rows[r].trace.records;
    const auto& b = again.rows[r].trace.records;
    REQUIRE(a.size() == b.size());
    for (std::size_t k = 0; k < a.size(); ++k) {
      CHECK(a[k].F == b[k].F);
      CHECK(a[k].step_norm == b[k].step_norm);
      CHECK(a[k].work_units == b[k].work_units);
      CHECK(a[k].correction_norm == b[k].correction_norm);
    }
  }
}
