#include "mmfista/harness/metrics.hpp"

#include <cmath>

namespace mmfista {

double snr_db(const GridImage& reference, const GridImage& x) {
  require_same_shape(reference, x, "snr_db");
  const double signal = dot(reference, reference);
  if (signal == 0.0) throw ParameterError("snr_db: reference image is zero");
  const GridImage err = reference - x;
  const double noise = dot(err, err);
  if (noise == 0.0) return kSnrCap;
  return std::min(kSnrCap, 10.0 * std::log10(signal / noise));
}

double relative_time(double t_mm, double t_fista) {
  if (t_fista == 0.0) throw ParameterError("relative_time: reference time is zero");
  return (t_mm - t_fista) / t_fista * 100.0;
}

std::vector<ThresholdHit> threshold_times(const SolverTrace& trace, double F_star, double F0,
                                          const std::vector<double>& percents) {
  if (trace.records.empty()) throw ParameterError("threshold_times: empty trace");
  if (!(F0 > F_star)) throw ParameterError("threshold_times: F0 must exceed F_star");
  std::vector<ThresholdHit> hits;
  for (double q : percents) {
    ThresholdHit hit{q, std::nullopt};
    const double level = q / 100.0 * (F0 - F_star);
    for (const TraceRecord& rec : trace.records) {
      if (std::isfinite(rec.F) && rec.F - F_star <= level) {
        hit.k = rec.k;
        hit.seconds = rec.time_s;
        hit.work_units = rec.work_units;
        break;
      }
    }
    hits.push_back(hit);
  }
  return hits;
}

}  // namespace mmfista
