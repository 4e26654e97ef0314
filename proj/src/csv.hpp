#pragma once

#include <string>

#include "scenario.hpp"

namespace gradflow {

// Shortest decimal string that round-trips to the same double.
std::string format_double(double v);

// Header: step,time,mass,px[,py],kinetic,energy,fisher,dissipation,iterations
// (py only for 2D runs; fisher/dissipation left blank when unset).
std::string report_csv_text(const RunReport& report);
void write_report_csv(const RunReport& report, const std::string& path);

// Header: cells_per_dim,cell_size,l1,l2,linf
std::string converge_csv_text(const ConvergeResult& result);
void write_converge_csv(const ConvergeResult& result, const std::string& path);

}  // namespace gradflow
