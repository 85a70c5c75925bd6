#ifndef MPROX_TRACE_HPP
#define MPROX_TRACE_HPP

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "mprox/common.hpp"

namespace mprox {

// One iteration of a run. Vector-valued fields stay in memory for metric
// recomputation; the CSV stream carries the scalar diagnostics.
struct TraceRow {
  int k = 0;
  Vec x;                 // iterate x_k
  Vec v;                 // auxiliary v_k (contracting family), empty otherwise
  double residual = 0;   // ||T_lambda(x_k)||
  double gap_lb = std::numeric_limits<double>::quiet_NaN();
  double dist_to_zero = std::numeric_limits<double>::quiet_NaN();
  double step_defect = 0;  // defect of the defining relation for the step into x_k
  double a = std::numeric_limits<double>::quiet_NaN();      // a_k
  double A = std::numeric_limits<double>::quiet_NaN();      // A_k
  double tau = std::numeric_limits<double>::quiet_NaN();    // tau_{k-1}
  double sigma = std::numeric_limits<double>::quiet_NaN();  // resolvent index used
  double log_growth = std::numeric_limits<double>::quiet_NaN();  // log (1-eta*tau)^{-k}
};

struct IterateTrace {
  std::string algorithm;
  double lambda = 0;
  bool complete = true;       // false when a run aborted mid-flight
  std::string abort_message;  // diagnostic when complete == false
  std::vector<TraceRow> rows;

  std::vector<double> residuals() const;
  std::vector<Vec> iterates() const;
};

// Stable, versioned CSV schema. Floats are printed with shortest round-trip
// formatting so repeated runs are byte-identical.
std::string trace_csv_header();
std::string trace_row_csv(const TraceRow& row);
void write_trace_csv(const IterateTrace& trace, const std::string& path);
std::string format_double(double v);

}  // namespace mprox

#endif
