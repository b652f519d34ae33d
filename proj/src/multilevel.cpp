#include "mmfista/multilevel.hpp"

#include <cmath>

namespace mmfista {

CompositeObjective LevelSpec::objective(const GridImage& z) const {
  if (z.shape() != shape) throw DimensionError("LevelSpec::objective: observation shape mismatch");
  return CompositeObjective{blur, z, prior, std::nullopt, gamma, lipschitz_f};
}

Hierarchy build_hierarchy(const LevelSpec& fine, int depth, const WaveletBasis& basis,
                          const HierarchyOptions& options) {
  if (depth < 2) throw ParameterError("build_hierarchy: depth must be >= 2");
  const std::size_t factor = std::size_t{1} << (depth - 1);
  if (fine.shape.rows < factor || fine.shape.cols < factor) {
    throw ParameterError("build_hierarchy: shape " + fine.shape.str() + " too small for depth " +
                         std::to_string(depth));
  }
  if (!fine.blur || fine.blur->input_shape() != fine.shape || fine.prior.shape() != fine.shape) {
    throw DimensionError("build_hierarchy: fine level components do not match its shape");
  }

  Hierarchy hier;
  hier.eta = options.eta;
  hier.levels.push_back(fine);
  if (hier.levels[0].lipschitz_f <= 0.0) {
    hier.levels[0].lipschitz_f = fine.blur->squared_norm();
  }

  const WaveletBasis& prior_basis = fine.prior.transform->basis();
  for (int i = 1; i < depth; ++i) {
    const LevelSpec& parent = hier.levels.back();
    TransferPair t(basis, parent.shape, options.eta);
    auto blur = std::make_shared<const SeparableBlur>(coarsen_blur(*parent.blur, t));

    // The coarse blur must equal restrict ∘ blur ∘ prolong.
    const GridImage probe = random_normal(t.coarse_shape(), options.power_seed + 101 + i);
    const GridImage direct = blur->apply(probe);
    const GridImage composed = t.restrict(parent.blur->apply(t.prolong(probe)));
    if (norm2(direct - composed) > 1e-10 * (norm2(composed) + norm2(probe))) {
      throw ParameterError("build_hierarchy: coarse blur inconsistent with transfers");
    }

    const Shape shape = t.coarse_shape();
    const int prior_levels = std::min(std::max(parent.prior.levels() - 1, 0), max_dwt_levels(shape));
    const double lambda = options.compound_lambda ? parent.prior.lambda * options.lambda_factor
                                                  : fine.prior.lambda * options.lambda_factor;
    LevelSpec level{shape, blur, L1SynthesisPrior(prior_basis, shape, prior_levels, lambda),
                    options.coarse_gamma, blur->squared_norm()};
    hier.transfers.push_back(std::move(t));
    hier.levels.push_back(std::move(level));
  }
  return hier;
}

CoarseModel build_coarse_model(const CompositeObjective& fine, const CompositeObjective& coarse,
                               const TransferPair& t, const GridImage& y_h) {
  if (fine.shape() != t.fine_shape() || coarse.shape() != t.coarse_shape()) {
    throw DimensionError("build_coarse_model: objectives do not match the transfer shapes");
  }
  require_same_shape(fine.observation, y_h, "build_coarse_model");
  CoarseModel model{coarse, t.restrict(y_h), y_h, fine.smoothed_grad(y_h)};
  model.objective.linear_tilt.reset();
  GridImage tilt = t.restrict(model.fine_smoothed_grad);
  tilt -= model.objective.smoothed_grad(model.anchor);
  model.objective.linear_tilt = std::move(tilt);
  return model;
}

namespace {

double level_scale(const Hierarchy& hier, int level) {
  return static_cast<double>(hier.levels[static_cast<std::size_t>(level)].shape.size()) /
         static_cast<double>(hier.levels[0].shape.size());
}

double tau_bar_sup(const TauBarMode& mode) {
  if (const auto* fixed = std::get_if<TauBarFixed>(&mode)) return fixed->value;
  return 1.0;
}

}  // namespace

CorrectionResult coarse_correction(const CoarseModel& model, int level, const VCycleContext& ctx,
                                   Stopwatch* clock) {
  const Hierarchy& hier = ctx.hierarchy;
  const MmfistaConfig& cfg = ctx.cfg;
  if (level < 1 || level >= hier.depth()) throw ParameterError("coarse_correction: level out of range");
  const CompositeObjective& obj = model.objective;
  const TransferPair& up = hier.transfers[static_cast<std::size_t>(level - 1)];
  const double scale = level_scale(hier, level);

  CorrectionResult result;
  GridImage start = model.anchor;

  if (level + 1 < hier.depth()) {
    const TransferPair& down = hier.transfers[static_cast<std::size_t>(level)];
    const CoarseModel child =
        build_coarse_model(obj, ctx.objectives[static_cast<std::size_t>(level + 1)], down, model.anchor);
    result.work_units += scale + level_scale(hier, level + 1);
    CorrectionResult deeper = coarse_correction(child, level + 1, ctx, clock);
    result.work_units += deeper.work_units;
    result.records = std::move(deeper.records);
    if (deeper.accepted) {
      int evals = 0;
      const double tau_bar = select_tau_bar(obj, model.anchor, deeper.direction, cfg.tau_bar, &evals);
      result.work_units += scale * evals;
      start.add_scaled(tau_bar, deeper.direction);
      result.records.back().tau_bar = tau_bar;
    }
  }

  const double tau = default_coarse_step(obj, cfg.kind);
  CoarseRunResult run = coarse_run_from(obj, model.anchor, start, cfg.kind, cfg.m, tau, cfg.a);
  result.work_units += scale * (run.gradient_evals + run.objective_evals);

  GridImage d_coarse = run.x - model.anchor;
  const double coarse_step_norm = norm2(d_coarse);
  result.accepted = !run.rejected && coarse_step_norm > 0.0;
  if (result.accepted) {
    result.direction = up.prolong(d_coarse);
  } else {
    result.direction = GridImage(up.fine_shape());
  }

  CycleRecord rec;
  rec.level = level;
  rec.accepted = result.accepted;
  rec.accepted_iterate = run.accepted_iterate;
  rec.F_in = run.F_in;
  rec.F_out = run.F_out;
  rec.F_smoothed_in = run.F_smoothed_in;
  rec.F_smoothed_out = run.F_smoothed_out;
  rec.coarse_step_norm = coarse_step_norm;
  if (cfg.diagnostics) {
    if (clock) clock->pause();
    const GridImage coarse_grad = obj.smoothed_grad(model.anchor);
    const GridImage restricted = up.restrict(model.fine_smoothed_grad);
    const double fine_norm = norm2(model.fine_smoothed_grad);
    rec.coherence_residual = fine_norm > 0.0 ? norm2(coarse_grad - restricted) / fine_norm : 0.0;
    rec.fine_directional = dot(up.prolong(d_coarse), model.fine_smoothed_grad);
    rec.coarse_directional = up.eta() * dot(d_coarse, coarse_grad);
    if (clock) clock->resume();
  }
  result.records.push_back(rec);
  return result;
}

double select_tau_bar(const CompositeObjective& obj, const GridImage& y, const GridImage& d,
                      const TauBarMode& mode, int* evaluations) {
  if (const auto* fixed = std::get_if<TauBarFixed>(&mode)) {
    if (!(fixed->value > 0.0)) throw ParameterError("select_tau_bar: fixed value must be positive");
    return fixed->value;
  }
  int evals = 1;
  const double base = obj.smoothed_value(y);
  double tau = 1.0;
  double result = 0.0;
  for (int halvings = 0; halvings <= 10; ++halvings) {
    GridImage trial = y;
    trial.add_scaled(tau, d);
    ++evals;
    if (obj.smoothed_value(trial) <= base) {
      result = tau;
      break;
    }
    tau *= 0.5;
  }
  if (evaluations) *evaluations = evals;
  return result;
}

double correction_diagnostic(double tau_h, double tau_bar_sup, const CompositeObjective& obj,
                             const GridImage& d) {
  if (!(tau_h > 0.0)) throw ParameterError("correction_diagnostic: tau_h must be positive");
  GridImage c = d;
  c.add_scaled(-tau_h, obj.blur->apply_adjoint(obj.blur->apply(d)));
  return (tau_bar_sup / tau_h) * norm2(c);
}

MmfistaResult mmfista_run(const Hierarchy& hier, const GridImage& z, const GridImage& x0,
                          const MmfistaConfig& cfg, const MonitorOptions& monitor) {
  if (hier.depth() < 2 && cfg.p > 0) throw ParameterError("mmfista_run: hierarchy needs >= 2 levels");
  if (cfg.m < 1) throw ParameterError("mmfista_run: m must be >= 1");
  if (cfg.p < 0) throw ParameterError("mmfista_run: p must be >= 0");
  if (cfg.max_iter < 1) throw ParameterError("mmfista_run: max_iter must be >= 1");
  const LevelSpec& fine = hier.levels[0];
  require_same_shape(z, x0, "mmfista_run");
  if (z.shape() != fine.shape) throw DimensionError("mmfista_run: observation does not match fine level");

  std::vector<CompositeObjective> objectives;
  objectives.push_back(fine.objective(z));
  for (int l = 1; l < hier.depth(); ++l) {
    const GridImage z_l = hier.transfers[static_cast<std::size_t>(l - 1)].restrict(objectives.back().observation);
    objectives.push_back(hier.levels[static_cast<std::size_t>(l)].objective(z_l));
  }
  const CompositeObjective& obj = objectives[0];
  const VCycleContext ctx{hier, objectives, cfg};

  const double tau = 0.99 / fine.lipschitz_f;
  const double eps = cfg.eps >= 0.0 ? cfg.eps : StopRule::for_shape(fine.shape, cfg.max_iter).eps;
  const int max_attempts = cfg.max_coarse_attempts > 0 ? cfg.max_coarse_attempts : 2 * cfg.p;
  const MomentumSchedule schedule{cfg.a};

  MmfistaResult result;
  auto& records = result.trace.records;
  records.reserve(static_cast<std::size_t>(cfg.max_iter) + 1);

  Stopwatch clock;
  double work = 0.0;
  int attempts = 0;
  GridImage x_prev = x0;
  GridImage y = x0;

  clock.pause();
  TraceRecord first;
  monitor_point(obj, x0, monitor, first);
  records.push_back(first);
  clock.resume();

  for (int k = 1; k <= cfg.max_iter; ++k) {
    double correction_norm = 0.0;
    GridImage x;
    if (result.coarse_uses < cfg.p && attempts < max_attempts) {
      ++attempts;
      const CoarseModel model = build_coarse_model(obj, objectives[1], hier.transfers[0], y);
      work += 1.0 + level_scale(hier, 1);
      CorrectionResult corr = coarse_correction(model, 1, ctx, &clock);
      work += corr.work_units;
      double tau_bar = 0.0;
      if (corr.accepted) {
        int evals = 0;
        tau_bar = select_tau_bar(obj, y, corr.direction, cfg.tau_bar, &evals);
        work += evals;
      }
      if (tau_bar > 0.0) {
        ++result.coarse_uses;
        correction_norm = correction_diagnostic(tau, tau_bar_sup(cfg.tau_bar), obj, corr.direction);
        GridImage y_bar = y;
        y_bar.add_scaled(tau_bar, corr.direction);
        x = fb_step(obj, y_bar, tau);
      } else {
        x = fb_step(obj, y, tau);
      }
      corr.records.back().tau_bar = tau_bar;
      corr.records.back().correction_norm = correction_norm;
      for (auto& rec : corr.records) {
        rec.k = k;
        result.cycles.push_back(rec);
      }
    } else {
      x = fb_step(obj, y, tau);
    }
    work += 1.0;

    GridImage delta = x - x_prev;
    const double step_norm = norm2(delta);
    const double alpha = schedule.alpha(k);
    y = x;
    y.add_scaled(alpha, delta);

    clock.pause();
    TraceRecord rec;
    rec.k = k;
    rec.time_s = clock.seconds();
    rec.step_norm = step_norm;
    rec.correction_norm = correction_norm;
    rec.work_units = work;
    rec.momentum = alpha;
    monitor_point(obj, x, monitor, rec);
    records.push_back(rec);
    clock.resume();

    x_prev = std::move(x);
    result.trace.iterations = k;
    if (step_norm <= eps) {
      result.trace.converged = true;
      break;
    }
  }
  result.x = std::move(x_prev);
  return result;
}

}  // namespace mmfista
