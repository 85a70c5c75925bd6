#ifndef MPROX_HARNESS_HPP
#define MPROX_HARNESS_HPP

#include <nlohmann/json.hpp>

#include "mprox/metrics.hpp"
#include "mprox/problems.hpp"
#include "mprox/solvers.hpp"

namespace mprox {

// Declarative experiment description. Validated on parse; round-trips through
// JSON losslessly.
struct ExperimentConfig {
  int schema_version = 1;
  nlohmann::json problem;      // problem-library spec subtree
  std::string algorithm;       // solver or baseline id
  double lambda = 1.0;
  nlohmann::json steps = {{"type", "constant"}, {"value", 1.0}};
  SublinearParams sublinear;
  LinearParams linear;
  BaselineParams baseline;
  nlohmann::json schedule = {{"family", "zero"}};
  std::uint64_t seed = 0;
  int budget = 100;
  nlohmann::json x0 = {{"type", "zeros"}};  // or explicit array
  std::string gap = "none";    // "none" or a gap strategy name
  double gap_D = 0.0;          // 0 = default convention 2*dist(x0, x_*)
  int gap_multistarts = 8;
  double residual_stop = 0.0;

  static ExperimentConfig from_json(const nlohmann::json& j);
  static ExperimentConfig from_file(const std::string& path);
  nlohmann::json to_json() const;
  std::uint64_t hash() const;  // FNV-1a of the canonical serialization

  OperatorPtr build_operator() const;
  Vec build_x0(const MonotoneOperator& op) const;
  SolverRunConfig build_run_config() const;
};

struct RunReport {
  std::string trace_path;
  nlohmann::json summary;  // final residual/gap, normalized sup, slope, ledger
  bool all_pass = true;
  bool complete = true;
  std::uint64_t config_hash = 0;
};

// Executes one experiment, writing <out_dir>/trace.csv (or .json) and
// <out_dir>/report.json.
RunReport cmd_run(const ExperimentConfig& cfg, const std::string& out_dir,
                  const std::string& format = "csv");

// Runs a set of configs sharing a problem and budget; writes an aligned
// residual-vs-k table (compare.csv) and returns it with a text rendering.
struct CompareResult {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> residuals;  // residuals[col][k]
  std::string csv_path;
  std::string text;
};
CompareResult cmd_compare(const std::vector<ExperimentConfig>& cfgs,
                          const std::string& out_dir);

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

// Named invariant suites over the standard corpus. Suite ids:
// operator-invariants, step-defects, potentials, rates, equivalences.
std::vector<CheckResult> cmd_check(const std::string& suite_id);

namespace checks {
std::vector<CheckResult> operator_invariants(const std::vector<OperatorPtr>& ops);
std::vector<CheckResult> step_defects(const std::vector<OperatorPtr>& ops);
// mutate_theta_sign deliberately corrupts the potential-decrease comparison;
// used by tests to prove the suite can detect a fault.
std::vector<CheckResult> potentials(const std::vector<OperatorPtr>& ops,
                                    bool mutate_theta_sign = false);
std::vector<CheckResult> rates(const std::vector<OperatorPtr>& ops);
std::vector<CheckResult> equivalences(const std::vector<OperatorPtr>& ops);
}  // namespace checks

// Per-scheme log-normalizer series for a finished trace, used for the
// rate certificate in reports (recomputable from CSV columns alone).
std::vector<double> rate_log_normalizers(const IterateTrace& trace,
                                         const ExperimentConfig& cfg);

}  // namespace mprox

#endif
