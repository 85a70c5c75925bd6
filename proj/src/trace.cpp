#include "mprox/trace.hpp"

#include <charconv>
#include <fstream>

namespace mprox {

std::vector<double> IterateTrace::residuals() const {
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(r.residual);
  return out;
}

std::vector<Vec> IterateTrace::iterates() const {
  std::vector<Vec> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(r.x);
  return out;
}

std::string format_double(double v) {
  if (std::isnan(v)) return "";
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string trace_csv_header() {
  return "# mprox-trace v1\nk,residual,gap_lb,dist_to_zero,step_defect,a,A,tau,sigma,log_growth";
}

std::string trace_row_csv(const TraceRow& r) {
  std::string line = std::to_string(r.k);
  for (double v : {r.residual, r.gap_lb, r.dist_to_zero, r.step_defect, r.a,
                   r.A, r.tau, r.sigma, r.log_growth}) {
    line += ',';
    line += format_double(v);
  }
  return line;
}

void write_trace_csv(const IterateTrace& trace, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigError("cannot open trace output: " + path);
  out << trace_csv_header() << '\n';
  for (const auto& r : trace.rows) out << trace_row_csv(r) << '\n';
  if (!trace.complete) out << "# incomplete\n";
}

}  // namespace mprox
