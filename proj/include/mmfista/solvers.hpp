#pragma once

#include <chrono>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "mmfista/prox.hpp"

namespace mmfista {

/// alpha_k = (t_k - 1) / t_{k+1} with t_k = (k + a - 1) / a; requires k >= 1, a > 2.
double ad_momentum(int k, double a);

/// Inertial schedule; `a` is the (AD) parameter. A disabled schedule yields
/// alpha = 0 (plain forward-backward).
struct MomentumSchedule {
  double a = 3.0;
  bool disabled = false;

  double alpha(int k) const { return disabled ? 0.0 : ad_momentum(k, a); }
};

enum class CoarseSolverKind { SmoothedGradient, ForwardBackward, FistaFB };

std::string to_string(CoarseSolverKind kind);
/// "smoothed" | "fb" | "fista"
CoarseSolverKind parse_coarse_kind(const std::string& name);

inline constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct TraceRecord {
  int k = 0;
  double F = kNaN;
  double F_smoothed = kNaN;
  double time_s = 0.0;
  double step_norm = 0.0;  // ||x_k - x_{k-1}||
  double correction_norm = 0.0;  // ||c_{h,k}||, zero without coarse use
  double snr_db = kNaN;
  double work_units = 0.0;
  double momentum = 0.0;  // alpha used to form y_k
};

struct SolverTrace {
  std::vector<TraceRecord> records;
  bool converged = false;
  int iterations = 0;
};

struct StopRule {
  double eps = 0.0;  // stop once ||x_{k} - x_{k-1}|| <= eps
  int max_iter = 1000;

  /// eps = 1e-6 * sqrt(N)
  static StopRule for_shape(Shape shape, int max_iter);
};

/// What to evaluate per iteration for the trace. Monitoring is excluded from
/// the recorded wall time.
struct MonitorOptions {
  bool record_objective = true;
  bool record_smoothed = false;
  const GridImage* ground_truth = nullptr;
};

/// Accumulates algorithm time only; monitoring runs between pause()/resume().
class Stopwatch {
 public:
  Stopwatch() : start_(Clock::now()) {}
  void pause() {
    if (!paused_) { elapsed_ += Clock::now() - start_; paused_ = true; }
  }
  void resume() {
    if (paused_) { start_ = Clock::now(); paused_ = false; }
  }
  double seconds() const {
    auto total = elapsed_;
    if (!paused_) total += Clock::now() - start_;
    return std::chrono::duration<double>(total).count();
  }

 private:
  using Clock = std::chrono::steady_clock;
  Clock::time_point start_;
  Clock::duration elapsed_{};
  bool paused_ = false;
};

/// Fills F / F_smoothed / snr_db of `rec` according to `monitor`.
void monitor_point(const CompositeObjective& obj, const GridImage& x, const MonitorOptions& monitor,
                   TraceRecord& rec);

/// prox_{tau g}(y - tau grad f(y)); requires 0 < tau < 1 / lipschitz_f.
GridImage fb_step(const CompositeObjective& obj, const GridImage& y, double tau);

/// y - tau grad F_gamma(y); requires 0 < tau < 2 / (lipschitz_f + 1/gamma).
GridImage smoothed_gradient_step(const CompositeObjective& obj, const GridImage& y, double tau);

/// Forward-backward step with backtracking on the local Lipschitz estimate:
/// L is multiplied by `growth` until the quadratic upper bound holds.
struct BacktrackingStep {
  GridImage x;
  double lipschitz;
  int evaluations;
};
BacktrackingStep fb_step_backtracking(const CompositeObjective& obj, const GridImage& y, double lipschitz,
                                      double growth = 2.0);

struct SolverResult {
  GridImage x;
  SolverTrace trace;
};

/// FISTA with (AD) momentum: x_k = fb_step(y_{k-1}), y_k = x_k + alpha_k (x_k - x_{k-1}),
/// y_0 = x_0. With `backtracking` the constant `tau` only seeds the first
/// Lipschitz estimate.
SolverResult fista_run(const CompositeObjective& obj, const GridImage& x0, const MomentumSchedule& schedule,
                       double tau, const StopRule& stop, const MonitorOptions& monitor = {},
                       bool backtracking = false);

struct CoarseRunResult {
  GridImage x;
  bool rejected = false;
  int accepted_iterate = 0;  // index l of the returned iterate x_{H,l}
  double F_in = 0.0, F_out = 0.0;
  double F_smoothed_in = 0.0, F_smoothed_out = 0.0;
  int gradient_evals = 0;
  int objective_evals = 0;
};

/// Default coarse step size for `kind`: 0.99/L for the proximal kinds,
/// 0.99/(L + 1/gamma) for smoothed gradient steps.
double default_coarse_step(const CompositeObjective& obj, CoarseSolverKind kind);

/// m iterations of the chosen coarse scheme from x0, followed by the
/// monotonicity guard: the result satisfies F(out) <= F(x0) and
/// F_gamma(out) <= F_gamma(x0). If x_m violates either, the best admissible
/// earlier iterate is returned; if none improves, x0 is returned with
/// `rejected` set.
CoarseRunResult coarse_run(const CompositeObjective& obj, const GridImage& x0, CoarseSolverKind kind, int m,
                           double tau, double a);

/// As coarse_run, but iterates from `start` while the guard compares against
/// `reference` (used when a deeper level has already moved the start point).
CoarseRunResult coarse_run_from(const CompositeObjective& obj, const GridImage& reference,
                                const GridImage& start, CoarseSolverKind kind, int m, double tau, double a);

}  // namespace mmfista
