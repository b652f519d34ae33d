#include <filesystem>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "mmfista/harness/benchmark.hpp"
#include "mmfista/harness/degrade.hpp"
#include "mmfista/harness/pgm.hpp"
#include "mmfista/harness/trace_csv.hpp"

namespace fs = std::filesystem;
using namespace mmfista;

namespace {

struct Overrides {
  std::string config;
  std::string image;
  std::string out = "out";
  std::optional<std::uint64_t> seed;
  std::string solver = "mmfista";
  std::optional<std::string> coarse;
  std::optional<int> p;
  std::optional<int> m;
  std::optional<int> levels;
  std::optional<double> lambda;
  std::optional<std::string> tau_bar;
};

ExperimentConfig resolve(const Overrides& o) {
  ExperimentConfig cfg = o.config.empty() ? ExperimentConfig{} : load_config(o.config);
  if (!o.image.empty()) cfg.image.path = o.image;
  if (o.seed) cfg.degradation.seed = *o.seed;
  if (o.coarse) {
    parse_coarse_kind(*o.coarse);
    cfg.mmfista.coarse = {*o.coarse};
  }
  if (o.p) cfg.mmfista.p = {*o.p};
  if (o.m) cfg.mmfista.m = *o.m;
  if (o.levels) cfg.hierarchy.levels = *o.levels;
  if (o.lambda) cfg.hierarchy.lambda = *o.lambda;
  if (o.tau_bar) {
    parse_tau_bar(*o.tau_bar);
    cfg.mmfista.tau_bar = *o.tau_bar;
  }
  return cfg;
}

int cmd_degrade(const Overrides& o) {
  const ExperimentConfig cfg = resolve(o);
  const BenchmarkInstance inst = prepare_instance(cfg);
  fs::create_directories(o.out);
  const fs::path dir(o.out);
  write_pgm((dir / "original.pgm").string(), inst.x_true, 16);
  write_pgm((dir / "degraded.pgm").string(), inst.z, 16);
  write_pgm((dir / "wiener.pgm").string(), inst.x0, 16);
  std::cout << "SNR(z) = " << inst.snr_z << " dB, SNR(x0) = " << snr_db(inst.x_true, inst.x0)
            << " dB, lambda = " << inst.lambda << "\n";
  return 0;
}

int cmd_solve(const Overrides& o) {
  const ExperimentConfig cfg = resolve(o);
  const BenchmarkInstance inst = prepare_instance(cfg);
  MonitorOptions monitor;
  monitor.ground_truth = &inst.x_true;

  SolverTrace trace;
  GridImage x;
  if (o.solver == "fista") {
    const CompositeObjective obj = inst.hierarchy.levels[0].objective(inst.z);
    const double eps = cfg.mmfista.eps >= 0.0 ? cfg.mmfista.eps : StopRule::for_shape(obj.shape(), 1).eps;
    SolverResult r = fista_run(obj, inst.x0, MomentumSchedule{cfg.mmfista.a}, 0.99 / obj.lipschitz_f,
                               StopRule{eps, cfg.mmfista.max_iter}, monitor);
    trace = std::move(r.trace);
    x = std::move(r.x);
  } else if (o.solver == "mmfista") {
    MmfistaConfig mc;
    mc.m = cfg.mmfista.m;
    mc.p = cfg.mmfista.p.empty() ? 1 : cfg.mmfista.p.front();
    mc.kind = parse_coarse_kind(cfg.mmfista.coarse.empty() ? "fista" : cfg.mmfista.coarse.front());
    mc.a = cfg.mmfista.a;
    mc.tau_bar = parse_tau_bar(cfg.mmfista.tau_bar);
    mc.eps = cfg.mmfista.eps;
    mc.max_iter = cfg.mmfista.max_iter;
    MmfistaResult r = mmfista_run(inst.hierarchy, inst.z, inst.x0, mc, monitor);
    trace = std::move(r.trace);
    x = std::move(r.x);
    std::cout << "coarse corrections used: " << r.coarse_uses << "\n";
  } else {
    throw ParameterError("--solver must be fista or mmfista");
  }

  fs::create_directories(o.out);
  const fs::path dir(o.out);
  write_trace_csv((dir / ("trace_" + o.solver + ".csv")).string(), trace);
  write_pgm((dir / "restored.pgm").string(), x, 16);
  const TraceRecord& last = trace.records.back();
  std::cout << o.solver << ": " << trace.iterations << " iterations"
            << (trace.converged ? "" : " (max_iter reached)") << ", F = " << last.F
            << ", SNR = " << snr_db(inst.x_true, x) << " dB (z: " << inst.snr_z << " dB), "
            << last.time_s << " s\n";
  return 0;
}

int cmd_benchmark(const Overrides& o) {
  const ExperimentConfig cfg = resolve(o);
  const BenchmarkReport report = run_benchmark(cfg, o.out);
  write_report_table(std::cout, report);
  return 0;
}

void add_common(CLI::App* sub, Overrides& o) {
  sub->add_option("--config", o.config, "JSON experiment config")->check(CLI::ExistingFile);
  sub->add_option("--image", o.image, "PGM image (default: synthetic scene)")->check(CLI::ExistingFile);
  sub->add_option("--out", o.out, "output directory");
  sub->add_option("--seed", o.seed, "noise seed");
  sub->add_option("--coarse", o.coarse, "coarse solver: smoothed|fb|fista");
  sub->add_option("--p", o.p, "number of coarse corrections");
  sub->add_option("--m", o.m, "coarse iterations per cycle");
  sub->add_option("--levels", o.levels, "hierarchy depth");
  sub->add_option("--lambda", o.lambda, "regularization weight (skips the grid search)");
  sub->add_option("--tau-bar", o.tau_bar, "correction step: number or 'search'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multilevel FISTA image restoration"};
  app.require_subcommand(1);
  Overrides o;

  auto* degrade_cmd = app.add_subcommand("degrade", "blur and add noise to an image, write the Wiener start");
  add_common(degrade_cmd, o);
  auto* solve_cmd = app.add_subcommand("solve", "restore one degraded image");
  add_common(solve_cmd, o);
  solve_cmd->add_option("--solver", o.solver, "fista|mmfista")->check(CLI::IsMember({"fista", "mmfista"}));
  auto* bench_cmd = app.add_subcommand("benchmark", "compare FISTA with MMFISTA configurations");
  add_common(bench_cmd, o);

  CLI11_PARSE(app, argc, argv);
  try {
    if (degrade_cmd->parsed()) return cmd_degrade(o);
    if (solve_cmd->parsed()) return cmd_solve(o);
    return cmd_benchmark(o);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
