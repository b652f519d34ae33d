#include "mmfista/harness/benchmark.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "mmfista/harness/degrade.hpp"
#include "mmfista/harness/pgm.hpp"
#include "mmfista/harness/trace_csv.hpp"
#include "mmfista/harness/wiener.hpp"

namespace mmfista {

namespace {

const std::vector<double> kDefaultLambdaGrid = {1e-4, 2e-4, 5e-4, 1e-3, 2e-3, 5e-3, 1e-2};

HierarchyOptions hierarchy_options(const HierarchyParams& h) {
  HierarchyOptions opts;
  opts.eta = h.eta;
  opts.lambda_factor = h.lambda_factor;
  opts.compound_lambda = h.compound_lambda;
  opts.coarse_gamma = h.gamma_coarse;
  return opts;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

double relative_work(double w_mm, double w_fista) { return (w_mm - w_fista) / w_fista * 100.0; }

std::string format_double(double v) {
  if (std::isnan(v)) return "";
  std::ostringstream s;
  s << std::setprecision(17) << v;
  return s.str();
}

struct RunSpec {
  std::string name;
  std::string kind;
  int p = 0;
  MmfistaConfig cfg;
  bool baseline = false;
};

struct RunOutput {
  SolverTrace trace;
  std::vector<CycleRecord> cycles;
  GridImage x;
  int coarse_uses = 0;
};

RunOutput run_once(const RunSpec& spec, const BenchmarkInstance& inst, const MonitorOptions& monitor) {
  RunOutput out;
  if (spec.baseline) {
    const CompositeObjective obj = inst.hierarchy.levels[0].objective(inst.z);
    const double eps = spec.cfg.eps >= 0.0 ? spec.cfg.eps : StopRule::for_shape(inst.z.shape(), 1).eps;
    SolverResult r = fista_run(obj, inst.x0, MomentumSchedule{spec.cfg.a}, 0.99 / obj.lipschitz_f,
                               StopRule{eps, spec.cfg.max_iter}, monitor);
    out.trace = std::move(r.trace);
    out.x = std::move(r.x);
  } else {
    MmfistaResult r = mmfista_run(inst.hierarchy, inst.z, inst.x0, spec.cfg, monitor);
    out.trace = std::move(r.trace);
    out.cycles = std::move(r.cycles);
    out.x = std::move(r.x);
    out.coarse_uses = r.coarse_uses;
  }
  return out;
}

}  // namespace

LevelSpec make_fine_level(const HierarchyParams& params, std::shared_ptr<const SeparableBlur> blur,
                          double lambda) {
  const Shape shape = blur->input_shape();
  const int levels = params.prior_levels < 0 ? max_dwt_levels(shape)
                                             : std::min(params.prior_levels, max_dwt_levels(shape));
  L1SynthesisPrior prior(WaveletBasis::from_name(params.prior_wavelet), shape, levels, lambda);
  return LevelSpec{shape, std::move(blur), std::move(prior), params.gamma_fine, 0.0};
}

double select_lambda(const HierarchyParams& params, const GridImage& x_true, const GridImage& z,
                     const GridImage& x0, std::shared_ptr<const SeparableBlur> blur,
                     const std::vector<double>& grid, int iterations) {
  if (grid.empty()) throw ParameterError("select_lambda: empty grid");
  const double lipschitz = blur->squared_norm();
  double best_lambda = grid.front();
  double best_snr = -std::numeric_limits<double>::infinity();
  for (double lambda : grid) {
    if (!(lambda >= 0.0)) throw ParameterError("select_lambda: lambda must be >= 0");
    LevelSpec fine = make_fine_level(params, blur, lambda);
    fine.lipschitz_f = lipschitz;
    const CompositeObjective obj = fine.objective(z);
    MonitorOptions quiet;
    quiet.record_objective = false;
    const SolverResult r =
        fista_run(obj, x0, MomentumSchedule{}, 0.99 / lipschitz, StopRule{0.0, iterations}, quiet);
    const double snr = snr_db(x_true, r.x);
    if (snr > best_snr) {
      best_snr = snr;
      best_lambda = lambda;
    }
  }
  return best_lambda;
}

BenchmarkInstance prepare_instance(const ExperimentConfig& cfg) {
  BenchmarkInstance inst;
  if (cfg.image.path.empty()) {
    if (cfg.image.size < 2) throw ParameterError("image.size must be >= 2");
    const auto n = static_cast<std::size_t>(cfg.image.size);
    inst.x_true = synthetic_scene(Shape{n, n});
  } else {
    inst.x_true = read_pgm(cfg.image.path);
  }
  const Psf1D psf = make_gaussian_psf(cfg.degradation.psf_support, cfg.degradation.psf_sigma);
  inst.blur = std::make_shared<const SeparableBlur>(inst.x_true.shape(), psf);
  inst.z = degrade(inst.x_true, *inst.blur, cfg.degradation.noise_sigma, cfg.degradation.seed);
  inst.snr_z = snr_db(inst.x_true, inst.z);

  WienerResult w = wiener_init(inst.z, *inst.blur, cfg.benchmark.wiener_mu);
  inst.x0 = std::move(w.x);
  inst.wiener_converged = w.converged;

  const HierarchyParams& h = cfg.hierarchy;
  inst.lambda = h.lambda >= 0.0
                    ? h.lambda
                    : select_lambda(h, inst.x_true, inst.z, inst.x0, inst.blur,
                                    h.lambda_grid.empty() ? kDefaultLambdaGrid : h.lambda_grid,
                                    cfg.benchmark.grid_iterations);
  const LevelSpec fine = make_fine_level(h, inst.blur, inst.lambda);
  if (h.levels >= 2) {
    inst.hierarchy =
        build_hierarchy(fine, h.levels, WaveletBasis::from_name(h.wavelet), hierarchy_options(h));
  } else {
    inst.hierarchy.eta = h.eta;
    inst.hierarchy.levels.push_back(fine);
    inst.hierarchy.levels[0].lipschitz_f = inst.blur->squared_norm();
  }
  return inst;
}

BenchmarkReport run_benchmark_on(const ExperimentConfig& cfg, const BenchmarkInstance& inst,
                                 const std::string& out_dir) {
  BenchmarkReport report;
  report.config = cfg;
  report.lambda = inst.lambda;
  report.snr_z = inst.snr_z;
  report.snr_x0 = snr_db(inst.x_true, inst.x0);
  report.thresholds = cfg.benchmark.thresholds;

  const CompositeObjective fine_obj = inst.hierarchy.levels[0].objective(inst.z);
  report.F0 = fine_obj.value(inst.x0);

  // Reference minimum value from a long FISTA run.
  {
    MonitorOptions quiet;
    quiet.record_objective = false;
    const SolverResult oracle =
        fista_run(fine_obj, inst.x0, MomentumSchedule{cfg.mmfista.a}, 0.99 / fine_obj.lipschitz_f,
                  StopRule{0.0, cfg.benchmark.oracle_iterations}, quiet);
    report.F_star = fine_obj.value(oracle.x);
  }

  MmfistaConfig base;
  base.m = cfg.mmfista.m;
  base.a = cfg.mmfista.a;
  base.tau_bar = parse_tau_bar(cfg.mmfista.tau_bar);
  base.eps = cfg.mmfista.eps;
  base.max_iter = cfg.mmfista.max_iter;

  std::vector<RunSpec> specs;
  specs.push_back(RunSpec{"fista", "-", 0, base, true});
  bool p0_added = false;
  for (int p : cfg.mmfista.p) {
    if (p == 0) {
      if (p0_added) continue;
      p0_added = true;
      MmfistaConfig c = base;
      c.p = 0;
      specs.push_back(RunSpec{"mmfista_p0", "-", 0, c, false});
      continue;
    }
    if (inst.hierarchy.depth() < 2) throw ParameterError("benchmark: p > 0 needs hierarchy.levels >= 2");
    for (const auto& name : cfg.mmfista.coarse) {
      MmfistaConfig c = base;
      c.p = p;
      c.kind = parse_coarse_kind(name);
      specs.push_back(RunSpec{"mmfista_" + name + "_p" + std::to_string(p), name, p, c, false});
    }
  }

  MonitorOptions monitor;
  monitor.ground_truth = &inst.x_true;

  for (const RunSpec& spec : specs) {
    BenchmarkRow row;
    row.name = spec.name;
    row.kind = spec.kind;
    row.p = spec.p;

    RunOutput first = run_once(spec, inst, monitor);
    std::vector<std::vector<double>> times(first.trace.records.size());
    for (std::size_t i = 0; i < times.size(); ++i) times[i].push_back(first.trace.records[i].time_s);
    for (int rep = 1; rep < cfg.benchmark.repetitions; ++rep) {
      const RunOutput again = run_once(spec, inst, monitor);
      const std::size_t n = std::min(times.size(), again.trace.records.size());
      for (std::size_t i = 0; i < n; ++i) times[i].push_back(again.trace.records[i].time_s);
    }
    for (std::size_t i = 0; i < times.size(); ++i) first.trace.records[i].time_s = median(times[i]);

    row.trace = std::move(first.trace);
    row.cycles = std::move(first.cycles);
    row.coarse_uses = first.coarse_uses;
    row.iterations = row.trace.iterations;
    row.converged = row.trace.converged;
    row.total_seconds = row.trace.records.back().time_s;
    row.total_work = row.trace.records.back().work_units;
    row.snr_final = snr_db(inst.x_true, first.x);
    report.rows.push_back(std::move(row));
  }

  // A run may dip slightly below the oracle value; keep every gap nonnegative.
  for (const auto& row : report.rows) {
    for (const auto& rec : row.trace.records) {
      if (!std::isnan(rec.F)) report.F_star = std::min(report.F_star, rec.F);
    }
  }

  for (auto& row : report.rows) row.hits = threshold_times(row.trace, report.F_star, report.F0, report.thresholds);
  const BenchmarkRow& fista = report.rows.front();
  for (auto& row : report.rows) {
    row.relative_time.assign(report.thresholds.size(), kNaN);
    row.relative_work.assign(report.thresholds.size(), kNaN);
    for (std::size_t i = 0; i < report.thresholds.size(); ++i) {
      const ThresholdHit& ref = fista.hits[i];
      const ThresholdHit& hit = row.hits[i];
      if (!ref.k || !hit.k) continue;
      if (ref.seconds > 0.0) row.relative_time[i] = relative_time(hit.seconds, ref.seconds);
      if (ref.work_units > 0.0) row.relative_work[i] = relative_work(hit.work_units, ref.work_units);
    }
  }

  if (!out_dir.empty()) {
    std::filesystem::create_directories(out_dir);
    const std::filesystem::path dir(out_dir);
    for (const auto& row : report.rows) write_trace_csv((dir / ("trace_" + row.name + ".csv")).string(), row.trace);
    std::ofstream csv(dir / "report.csv");
    write_report_csv(csv, report);
    std::ofstream txt(dir / "report.txt");
    write_report_table(txt, report);
    if (!csv || !txt) throw std::runtime_error("benchmark: failed writing report to " + out_dir);
  }
  return report;
}

BenchmarkReport run_benchmark(const ExperimentConfig& cfg, const std::string& out_dir) {
  return run_benchmark_on(cfg, prepare_instance(cfg), out_dir);
}

BenchmarkReport run_benchmark(const std::string& config_file, const std::string& out_dir) {
  return run_benchmark(load_config(config_file), out_dir);
}

void write_report_csv(std::ostream& out, const BenchmarkReport& report) {
  out << "run,kind,p,threshold_percent,k,seconds,work_units,relative_time,relative_work,"
         "total_seconds,total_work,iterations,coarse_uses,converged,snr_z,snr_final\n";
  for (const auto& row : report.rows) {
    for (std::size_t i = 0; i < report.thresholds.size(); ++i) {
      const ThresholdHit& hit = row.hits[i];
      out << row.name << ',' << row.kind << ',' << row.p << ',' << format_double(report.thresholds[i]) << ',';
      if (hit.k) {
        out << *hit.k << ',' << format_double(hit.seconds) << ',' << format_double(hit.work_units) << ',';
      } else {
        out << ",,,";
      }
      out << format_double(row.relative_time[i]) << ',' << format_double(row.relative_work[i]) << ','
          << format_double(row.total_seconds) << ',' << format_double(row.total_work) << ',' << row.iterations
          << ',' << row.coarse_uses << ',' << (row.converged ? 1 : 0) << ',' << format_double(report.snr_z)
          << ',' << format_double(row.snr_final) << '\n';
    }
  }
}

void write_report_table(std::ostream& out, const BenchmarkReport& report) {
  const auto flags = out.flags();
  out << std::fixed;
  out << "lambda = " << std::setprecision(6) << report.lambda << "   F* = " << std::setprecision(10)
      << report.F_star << "   F(x0) = " << report.F0 << '\n';
  out << std::setprecision(2) << "SNR(z) = " << report.snr_z << " dB   SNR(x0) = " << report.snr_x0 << " dB\n\n";

  out << std::left << std::setw(22) << "run" << std::right;
  for (double q : report.thresholds) {
    std::ostringstream label;
    label << q << "%";
    out << std::setw(22) << label.str();
  }
  out << std::setw(10) << "iters" << std::setw(10) << "SNR" << '\n';

  out << std::left << std::setw(22) << "" << std::right;
  for (std::size_t i = 0; i < report.thresholds.size(); ++i) out << std::setw(22) << "sec / work / rel.work";
  out << '\n';

  for (const auto& row : report.rows) {
    out << std::left << std::setw(22) << (row.converged ? row.name : row.name + " *") << std::right;
    for (std::size_t i = 0; i < report.thresholds.size(); ++i) {
      const ThresholdHit& hit = row.hits[i];
      std::ostringstream cell;
      cell << std::fixed;
      if (!hit.k) {
        cell << "-";
      } else {
        cell << std::setprecision(3) << hit.seconds << " / " << std::setprecision(1) << hit.work_units;
        if (!std::isnan(row.relative_work[i]) && &row != &report.rows.front()) {
          cell << " / " << std::showpos << std::setprecision(0) << row.relative_work[i] << std::noshowpos << "%";
        }
      }
      out << std::setw(22) << cell.str();
    }
    out << std::setw(10) << row.iterations << std::setw(10) << std::setprecision(2) << row.snr_final << '\n';
  }
  out << "\n* did not meet the stopping tolerance within max_iter\n";
  out.flags(flags);
}

}  // namespace mmfista
