#include "mmfista/solvers.hpp"

#include <cmath>

#include "mmfista/harness/metrics.hpp"

namespace mmfista {

double ad_momentum(int k, double a) {
  if (!(a > 2.0)) throw ParameterError("ad_momentum: a must be > 2");
  if (k < 1) throw ParameterError("ad_momentum: k must be >= 1");
  const double t_k = (k + a - 1.0) / a;
  const double t_next = (k + a) / a;
  return (t_k - 1.0) / t_next;
}

std::string to_string(CoarseSolverKind kind) {
  switch (kind) {
    case CoarseSolverKind::SmoothedGradient: return "smoothed";
    case CoarseSolverKind::ForwardBackward: return "fb";
    case CoarseSolverKind::FistaFB: return "fista";
  }
  return "?";
}

CoarseSolverKind parse_coarse_kind(const std::string& name) {
  if (name == "smoothed") return CoarseSolverKind::SmoothedGradient;
  if (name == "fb") return CoarseSolverKind::ForwardBackward;
  if (name == "fista") return CoarseSolverKind::FistaFB;
  throw ParameterError("unknown coarse solver '" + name + "' (expected smoothed|fb|fista)");
}

StopRule StopRule::for_shape(Shape shape, int max_iter) {
  return StopRule{1e-6 * std::sqrt(static_cast<double>(shape.size())), max_iter};
}

void monitor_point(const CompositeObjective& obj, const GridImage& x, const MonitorOptions& monitor,
                   TraceRecord& rec) {
  if (monitor.record_objective) {
    if (monitor.record_smoothed) {
      const auto v = obj.values(x);
      rec.F = v.F;
      rec.F_smoothed = v.F_smoothed;
    } else {
      rec.F = obj.value(x);
    }
  }
  if (monitor.ground_truth) rec.snr_db = snr_db(*monitor.ground_truth, x);
}

GridImage fb_step(const CompositeObjective& obj, const GridImage& y, double tau) {
  if (!(tau > 0.0) || !(tau < 1.0 / obj.lipschitz_f)) {
    throw ParameterError("fb_step: tau must lie in (0, 1/L_f)");
  }
  GridImage forward = y;
  forward.add_scaled(-tau, obj.grad_f(y));
  return obj.prior.prox(forward, tau);
}

GridImage smoothed_gradient_step(const CompositeObjective& obj, const GridImage& y, double tau) {
  if (!(tau > 0.0) || !(tau < 2.0 / obj.smoothed_lipschitz())) {
    throw ParameterError("smoothed_gradient_step: tau must lie in (0, 2/(L_f + 1/gamma))");
  }
  GridImage out = y;
  out.add_scaled(-tau, obj.smoothed_grad(y));
  return out;
}

BacktrackingStep fb_step_backtracking(const CompositeObjective& obj, const GridImage& y, double lipschitz,
                                      double growth) {
  if (!(lipschitz > 0.0) || !(growth > 1.0)) throw ParameterError("fb_step_backtracking: bad parameters");
  const GridImage grad = obj.grad_f(y);
  const double fy = obj.smooth_value(y);
  int evaluations = 0;
  for (;;) {
    const double tau = 1.0 / lipschitz;
    GridImage forward = y;
    forward.add_scaled(-tau, grad);
    GridImage x = obj.prior.prox(forward, tau);
    ++evaluations;
    const GridImage diff = x - y;
    const double bound = fy + dot(grad, diff) + 0.5 * lipschitz * dot(diff, diff);
    if (obj.smooth_value(x) <= bound || lipschitz >= 1e3 * obj.lipschitz_f) {
      return {std::move(x), lipschitz, evaluations};
    }
    lipschitz *= growth;
  }
}

SolverResult fista_run(const CompositeObjective& obj, const GridImage& x0, const MomentumSchedule& schedule,
                       double tau, const StopRule& stop, const MonitorOptions& monitor, bool backtracking) {
  require_same_shape(obj.observation, x0, "fista_run");
  if (stop.max_iter < 1) throw ParameterError("fista_run: max_iter must be >= 1");
  SolverResult result;
  auto& records = result.trace.records;
  records.reserve(static_cast<std::size_t>(stop.max_iter) + 1);

  Stopwatch clock;
  double work = 0.0;
  double lipschitz = 1.0 / tau;
  GridImage x_prev = x0;
  GridImage y = x0;

  clock.pause();
  TraceRecord first;
  monitor_point(obj, x0, monitor, first);
  records.push_back(first);
  clock.resume();

  for (int k = 1; k <= stop.max_iter; ++k) {
    GridImage x;
    if (backtracking) {
      auto step = fb_step_backtracking(obj, y, lipschitz);
      x = std::move(step.x);
      lipschitz = step.lipschitz;
      work += step.evaluations;
    } else {
      x = fb_step(obj, y, tau);
      work += 1.0;
    }
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
    rec.work_units = work;
    rec.momentum = alpha;
    monitor_point(obj, x, monitor, rec);
    records.push_back(rec);
    clock.resume();

    x_prev = std::move(x);
    result.trace.iterations = k;
    if (step_norm <= stop.eps) {
      result.trace.converged = true;
      break;
    }
  }
  result.x = std::move(x_prev);
  return result;
}

double default_coarse_step(const CompositeObjective& obj, CoarseSolverKind kind) {
  if (kind == CoarseSolverKind::SmoothedGradient) return 0.99 / obj.smoothed_lipschitz();
  return 0.99 / obj.lipschitz_f;
}

CoarseRunResult coarse_run_from(const CompositeObjective& obj, const GridImage& reference,
                                const GridImage& start, CoarseSolverKind kind, int m, double tau, double a) {
  if (m < 1) throw ParameterError("coarse_run: m must be >= 1");
  require_same_shape(reference, start, "coarse_run");
  CoarseRunResult out;

  std::vector<GridImage> iterates;
  iterates.reserve(static_cast<std::size_t>(m) + 1);
  iterates.push_back(start);
  GridImage y = start;
  for (int l = 0; l < m; ++l) {
    const GridImage& x_l = iterates.back();
    GridImage next;
    switch (kind) {
      case CoarseSolverKind::SmoothedGradient:
        next = smoothed_gradient_step(obj, x_l, tau);
        break;
      case CoarseSolverKind::ForwardBackward:
        next = fb_step(obj, x_l, tau);
        break;
      case CoarseSolverKind::FistaFB: {
        // Momentum restarts every cycle: alpha_1 = 0 on the first step.
        next = fb_step(obj, y, tau);
        y = next;
        y.add_scaled(ad_momentum(l + 1, a), next - x_l);
        break;
      }
    }
    ++out.gradient_evals;
    iterates.push_back(std::move(next));
  }

  const auto ref = obj.values(reference);
  ++out.objective_evals;
  out.F_in = ref.F;
  out.F_smoothed_in = ref.F_smoothed;

  auto admissible = [&](const CompositeObjective::Values& v) {
    return v.F <= ref.F && v.F_smoothed <= ref.F_smoothed && (v.F < ref.F || v.F_smoothed < ref.F_smoothed);
  };

  auto last = obj.values(iterates.back());
  ++out.objective_evals;
  if (admissible(last)) {
    out.accepted_iterate = m;
    out.F_out = last.F;
    out.F_smoothed_out = last.F_smoothed;
    out.x = std::move(iterates.back());
    return out;
  }

  int best = -1;
  CompositeObjective::Values best_values{};
  for (int l = m - 1; l >= 0; --l) {
    const auto v = obj.values(iterates[static_cast<std::size_t>(l)]);
    ++out.objective_evals;
    if (admissible(v) && (best < 0 || v.F < best_values.F)) {
      best = l;
      best_values = v;
    }
  }
  if (best < 0) {
    out.rejected = true;
    out.accepted_iterate = -1;
    out.F_out = ref.F;
    out.F_smoothed_out = ref.F_smoothed;
    out.x = reference;
    return out;
  }
  out.accepted_iterate = best;
  out.F_out = best_values.F;
  out.F_smoothed_out = best_values.F_smoothed;
  out.x = std::move(iterates[static_cast<std::size_t>(best)]);
  return out;
}

CoarseRunResult coarse_run(const CompositeObjective& obj, const GridImage& x0, CoarseSolverKind kind, int m,
                           double tau, double a) {
  return coarse_run_from(obj, x0, x0, kind, m, tau, a);
}

}  // namespace mmfista
