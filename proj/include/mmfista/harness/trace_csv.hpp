#pragma once

#include <ostream>
#include <string>

#include "mmfista/solvers.hpp"

namespace mmfista {

inline constexpr const char* kTraceHeader = "k,F,F_smoothed,time_s,step_norm,correction_norm,snr_db,work_units";

void write_trace_csv(std::ostream& out, const SolverTrace& trace);
void write_trace_csv(const std::string& path, const SolverTrace& trace);

}  // namespace mmfista
