#pragma once

#include <memory>
#include <variant>
#include <vector>

#include "mmfista/solvers.hpp"
#include "mmfista/transfer.hpp"

namespace mmfista {

/// One level of the hierarchy, independent of the observation.
struct LevelSpec {
  Shape shape;
  std::shared_ptr<const SeparableBlur> blur;
  L1SynthesisPrior prior;
  double gamma = 1.0;
  double lipschitz_f = 0.0;  // ||A||^2; computed by build_hierarchy when <= 0

  /// Untilted objective at this level for observation `z`.
  CompositeObjective objective(const GridImage& z) const;
};

struct HierarchyOptions {
  double eta = 0.25;
  double lambda_factor = 0.25;  // lambda_{l+1} = lambda_factor * lambda_l
  bool compound_lambda = true;  // false: every coarse level uses lambda_0 * lambda_factor
  double coarse_gamma = 1.1;
  std::uint64_t power_seed = 7;
};

/// Levels fine first; transfers[i] links levels i and i+1.
struct Hierarchy {
  std::vector<LevelSpec> levels;
  std::vector<TransferPair> transfers;
  double eta = 0.25;

  int depth() const { return static_cast<int>(levels.size()); }
};

Hierarchy build_hierarchy(const LevelSpec& fine, int depth, const WaveletBasis& basis,
                          const HierarchyOptions& options = {});

/// Coarse objective tilted for first-order coherence with the fine smoothed
/// objective at `parent_point`.
struct CoarseModel {
  CompositeObjective objective;  // linear_tilt = v_{H,k}
  GridImage anchor;              // x_{H,k,0} = restrict(parent_point)
  GridImage parent_point;        // y_{h,k}
  GridImage fine_smoothed_grad;  // grad F_{h,gamma_h}(y_{h,k})
};

/// `fine` may itself carry a tilt (deeper levels of a V-cycle); `coarse` is
/// the untilted coarse objective.
CoarseModel build_coarse_model(const CompositeObjective& fine, const CompositeObjective& coarse,
                               const TransferPair& t, const GridImage& y_h);

struct TauBarFixed {
  double value = 1.0;
};
struct TauBarLinesearch {};
using TauBarMode = std::variant<TauBarFixed, TauBarLinesearch>;

struct MmfistaConfig {
  int m = 5;
  int p = 1;
  CoarseSolverKind kind = CoarseSolverKind::FistaFB;
  double a = 3.0;
  TauBarMode tau_bar = TauBarFixed{1.0};
  double eps = -1.0;  // < 0: 1e-6 * sqrt(N_h)
  int max_iter = 1000;
  /// Cap on coarse-cycle attempts (accepted or rejected); <= 0 means 2p.
  int max_coarse_attempts = 0;
  bool diagnostics = true;
};

/// Per-level record of one coarse correction.
struct CycleRecord {
  int k = 0;       // fine iteration during which the cycle ran
  int level = 1;   // coarse level index (1 = first coarse)
  bool accepted = false;
  int accepted_iterate = 0;
  double tau_bar = 0.0;
  double F_in = 0.0, F_out = 0.0;                    // F_H at x_{H,k,0} and x_{H,k,m}
  double F_smoothed_in = 0.0, F_smoothed_out = 0.0;  // F_{H,gamma_H}
  double coarse_step_norm = 0.0;                     // ||x_{H,k,m} - x_{H,k,0}||
  double fine_directional = 0.0;    // <prolong(d_H), grad F_{h,gamma_h}(y_h)>
  double coarse_directional = 0.0;  // eta * <d_H, grad F_{H,gamma_H}(x_{H,k,0})>
  double coherence_residual = 0.0;  // relative, at the anchor
  double correction_norm = 0.0;     // ||c_{h,k}|| (top level only)
};

struct CorrectionResult {
  GridImage direction;  // at the parent level; zero when rejected
  bool accepted = false;
  double work_units = 0.0;
  std::vector<CycleRecord> records;
};

/// Context for one V-cycle: untilted objectives for every level and the
/// transfers between them.
struct VCycleContext {
  const Hierarchy& hierarchy;
  const std::vector<CompositeObjective>& objectives;
  const MmfistaConfig& cfg;
};

/// Runs the coarse solver on `model` (after first recursing into deeper
/// levels, when present) and returns d = prolong(x_{H,k,m} - x_{H,k,0}).
/// `level` is the index of the model's level in the hierarchy.
CorrectionResult coarse_correction(const CoarseModel& model, int level, const VCycleContext& ctx,
                                   Stopwatch* clock = nullptr);

/// Fixed: the configured constant. Linesearch: 1, 1/2, ..., 1/2^10 until
/// F_gamma(y + tau d) <= F_gamma(y), else 0.
double select_tau_bar(const CompositeObjective& obj, const GridImage& y, const GridImage& d,
                      const TauBarMode& mode, int* evaluations = nullptr);

/// ||(tau_bar_sup / tau_h) (d - tau_h A^T A d)||
double correction_diagnostic(double tau_h, double tau_bar_sup, const CompositeObjective& obj,
                             const GridImage& d);

struct MmfistaResult {
  GridImage x;
  SolverTrace trace;
  std::vector<CycleRecord> cycles;
  int coarse_uses = 0;
};

MmfistaResult mmfista_run(const Hierarchy& hier, const GridImage& z, const GridImage& x0,
                          const MmfistaConfig& cfg, const MonitorOptions& monitor = {});

}  // namespace mmfista
