#include "csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "errors.hpp"

namespace gradflow {

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

namespace {

void append_optional(std::string& line, const std::optional<double>& v) {
  line += ',';
  if (v) line += format_double(*v);
}

}  // namespace

std::string report_csv_text(const RunReport& report) {
  const bool two_d = report.dimension == 2;
  std::string out = two_d
                        ? "step,time,mass,px,py,kinetic,energy,fisher,dissipation,iterations\n"
                        : "step,time,mass,px,kinetic,energy,fisher,dissipation,iterations\n";
  for (const RunRow& r : report.rows) {
    std::string line = std::to_string(r.step);
    line += ',' + format_double(r.time);
    line += ',' + format_double(r.mass);
    line += ',' + format_double(r.px);
    if (two_d) line += ',' + format_double(r.py);
    line += ',' + format_double(r.kinetic);
    line += ',' + format_double(r.energy);
    append_optional(line, r.fisher);
    append_optional(line, r.dissipation);
    line += ',' + std::to_string(r.iterations);
    line += '\n';
    out += line;
  }
  return out;
}

void write_report_csv(const RunReport& report, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw IoError("cannot open output file: " + path);
  f << report_csv_text(report);
  if (!f) throw IoError("failed writing output file: " + path);
}

std::string converge_csv_text(const ConvergeResult& result) {
  std::string out = "cells_per_dim,cell_size,l1,l2,linf\n";
  for (const ConvergeRow& r : result.rows) {
    out += std::to_string(r.cells_per_dim);
    out += ',' + format_double(r.cell_size);
    out += ',' + format_double(r.errors.l1);
    out += ',' + format_double(r.errors.l2);
    out += ',' + format_double(r.errors.linf);
    out += '\n';
  }
  return out;
}

void write_converge_csv(const ConvergeResult& result, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw IoError("cannot open output file: " + path);
  f << converge_csv_text(result);
  if (!f) throw IoError("failed writing output file: " + path);
}

}  // namespace gradflow
