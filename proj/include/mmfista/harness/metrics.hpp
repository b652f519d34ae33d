#pragma once

#include <optional>
#include <vector>

#include "mmfista/solvers.hpp"

namespace mmfista {

/// Reported instead of +infinity when the estimate equals the reference.
inline constexpr double kSnrCap = 999.0;

/// 10 log10(||reference||^2 / ||reference - x||^2).
double snr_db(const GridImage& reference, const GridImage& x);

/// (t_mm - t_fista) / t_fista * 100.
double relative_time(double t_mm, double t_fista);

struct ThresholdHit {
  double percent;
  std::optional<int> k;  // absent when never reached
  double seconds = 0.0;
  double work_units = 0.0;
};

/// For each q, the first record with F - F_star <= q/100 (F0 - F_star).
std::vector<ThresholdHit> threshold_times(const SolverTrace& trace, double F_star, double F0,
                                          const std::vector<double>& percents);

}  // namespace mmfista
