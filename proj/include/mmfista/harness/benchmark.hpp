#pragma once

#include <memory>
#include <ostream>
#include <string>
#include <vector>

#include "mmfista/harness/config.hpp"
#include "mmfista/harness/metrics.hpp"

namespace mmfista {

/// Degraded problem shared by every run of a benchmark.
struct BenchmarkInstance {
  GridImage x_true;
  GridImage z;
  GridImage x0;  // Wiener initialization
  std::shared_ptr<const SeparableBlur> blur;
  Hierarchy hierarchy;
  double lambda = 0.0;
  double snr_z = 0.0;
  bool wiener_converged = false;
};

/// Fine-level spec for the given blur and lambda, prior built from the
/// hierarchy parameters.
LevelSpec make_fine_level(const HierarchyParams& params, std::shared_ptr<const SeparableBlur> blur,
                          double lambda);

/// Lambda from `grid` maximizing the SNR of a short FISTA run from x0.
double select_lambda(const HierarchyParams& params, const GridImage& x_true, const GridImage& z,
                     const GridImage& x0, std::shared_ptr<const SeparableBlur> blur,
                     const std::vector<double>& grid, int iterations);

BenchmarkInstance prepare_instance(const ExperimentConfig& cfg);

struct BenchmarkRow {
  std::string name;
  std::string kind;  // "-" for the FISTA baseline
  int p = 0;
  std::vector<ThresholdHit> hits;
  std::vector<double> relative_time;  // percent vs FISTA; NaN when a side is absent
  std::vector<double> relative_work;
  double total_seconds = 0.0;
  double total_work = 0.0;
  int iterations = 0;
  int coarse_uses = 0;
  bool converged = false;
  double snr_final = 0.0;
  SolverTrace trace;        // timing column is the median over repetitions
  std::vector<CycleRecord> cycles;
};

struct BenchmarkReport {
  ExperimentConfig config;
  double lambda = 0.0;
  double F_star = 0.0;
  double F0 = 0.0;
  double snr_z = 0.0;
  double snr_x0 = 0.0;
  std::vector<double> thresholds;
  std::vector<BenchmarkRow> rows;  // rows[0] is FISTA
};

/// Runs the FISTA baseline and every (coarse kind, p) MMFISTA configuration on
/// one instance. When `out_dir` is non-empty, writes report.csv, report.txt and
/// one trace CSV per row there.
BenchmarkReport run_benchmark(const ExperimentConfig& cfg, const std::string& out_dir = "");
BenchmarkReport run_benchmark(const std::string& config_file, const std::string& out_dir = "");

/// Same as run_benchmark but on an already prepared instance.
BenchmarkReport run_benchmark_on(const ExperimentConfig& cfg, const BenchmarkInstance& inst,
                                 const std::string& out_dir = "");

void write_report_csv(std::ostream& out, const BenchmarkReport& report);
void write_report_table(std::ostream& out, const BenchmarkReport& report);

}  // namespace mmfista
