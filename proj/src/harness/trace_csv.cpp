#include "mmfista/harness/trace_csv.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <stdexcept>

namespace mmfista {

namespace {

void field(std::ostream& out, double v) {
  if (std::isnan(v)) return;  // empty cell
  out << v;
}

}  // namespace

void write_trace_csv(std::ostream& out, const SolverTrace& trace) {
  out << kTraceHeader << "\n" << std::setprecision(17);
  for (const TraceRecord& r : trace.records) {
    out << r.k << ",";
    field(out, r.F);
    out << ",";
    field(out, r.F_smoothed);
    out << ",";
    field(out, r.time_s);
    out << ",";
    field(out, r.step_norm);
    out << ",";
    field(out, r.correction_norm);
    out << ",";
    field(out, r.snr_db);
    out << ",";
    field(out, r.work_units);
    out << "\n";
  }
}

void write_trace_csv(const std::string& path, const SolverTrace& trace) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_trace_csv: cannot open " + path);
  write_trace_csv(out, trace);
}

}  // namespace mmfista
