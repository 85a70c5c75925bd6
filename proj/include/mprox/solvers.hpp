#ifndef MPROX_SOLVERS_HPP
#define MPROX_SOLVERS_HPP

#include "mprox/baselines.hpp"
#include "mprox/operator.hpp"
#include "mprox/schedules.hpp"
#include "mprox/trace.hpp"

namespace mprox {

// The four solver iterations on the Yosida regularization T_lambda. Step
// functions are pure (state in, state out); each costs exactly one base
// resolvent call. Defect helpers re-evaluate the defining relation of a step
// through fresh oracle calls, independent of the algebra that produced it.

// ---------------------------------------------------------------------------
// Plain PPA on T_lambda:  0 = a_{k+1} T_lambda(x_{k+1}) + x_{k+1} - x_k + g_k
// ---------------------------------------------------------------------------

Vec novel_ppa_step(const YosidaView& view, const Vec& x_k, double a_next,
                   const Vec& g_k);
double novel_ppa_defect(const YosidaView& view, const Vec& x_k, double a_next,
                        const Vec& g_k, const Vec& x_next);

// ---------------------------------------------------------------------------
// Contracting PPA:
//   0 = A_{k+1} T_lambda(x_{k+1}) - A_k T_lambda(x_k) + v_{k+1} - v_k + g_k
// with A_k = a_k + A_{k-1}, v_k = (A_k x_k - A_{k-1} x_{k-1}) / a_k.
// ---------------------------------------------------------------------------

struct ContractingState {
  Vec x_prev, x_cur;
  Vec v_cur;   // v_k; equals (A_k x_k - A_{k-1} x_{k-1}) / a_k for k >= 1
  double A_prev = 0, A_cur = 0, a_cur = 0;
  Vec ty_cur;  // cached T_lambda(x_cur), maintained without extra oracle calls

  const Vec& v() const { return v_cur; }

  // x_{-1} = x_0, A_{-1} = 0; v_0 = x_0 (the x_{-1} = x_0 convention makes
  // this hold for any a_0). A0 defaults to a0; reduction mappings onto other
  // schemes may need a different A_0.
  static ContractingState init(const YosidaView& view, const Vec& x0, double a0,
                               double A0 = -1.0);
};

ContractingState contracting_ppa_step(const YosidaView& view,
                                      const ContractingState& s, double a_next,
                                      const Vec& g_k);

// Exact (g == 0) closed form driven by the conserved vector
// s0 = A_0 T_lambda(x_0) + v_0.
Vec contracting_ppa_exact_step(const YosidaView& view, const Vec& s0,
                               const Vec& x_k, double A_k, double a_next);

double contracting_ppa_defect(const YosidaView& view, const ContractingState& before,
                              const ContractingState& after, const Vec& g_k);

// ---------------------------------------------------------------------------
// Sublinear Contracting PPA: tau_k = 1/(a k + 1),
//   0 = (1/tau_k^p) T_lambda(x_{k+1}) - ((1-tau_k)/tau_k^p) T_lambda(x_k)
//       + (v_{k+1} - v_k) + beta (x_{k+1} - x_k) + g_k
// with v_k = x_k/tau_{k-1} - (1-tau_{k-1}) x_{k-1}/tau_{k-1}. The implicit
// relation is solved exactly by collecting x_{k+1} terms into a single Yosida
// resolvent.
// ---------------------------------------------------------------------------

struct SublinearParams {
  double a = 0.5;     // 0 < a <= (1 - mu)/p
  double mu = 0.0;    // [0, 1)
  double p = 1.0;     // >= 1
  double beta = 0.0;  // >= 0
  double tau_init = 1.0;  // tau_{-1} in (0, 1]

  void validate() const;
  double tau(int k) const;  // 1/(a k + 1) for k >= 0, tau_init for k = -1
};

struct SublinearState {
  Vec x_prev, x_cur;
  Vec ty_cur;
  int k = 0;  // index of x_cur

  Vec v(const SublinearParams& prm) const;
  static SublinearState init(const YosidaView& view, const Vec& x0,
                             const SublinearParams& prm);
};

SublinearState sublinear_cppa_step(const YosidaView& view,
                                   const SublinearParams& prm,
                                   const SublinearState& s, const Vec& g_k);
double sublinear_cppa_defect(const YosidaView& view, const SublinearParams& prm,
                             const SublinearState& before,
                             const SublinearState& after, const Vec& g_k);

// ---------------------------------------------------------------------------
// Linear Contracting PPA: fixed tau in (0,1), eta in (0,1], beta >= 0,
//   0 = rho_k T_lambda(x_{k+1}) - (1-tau) rho_k T_lambda(x_k)
//       + (v_{k+1} - v_k) + beta (x_{k+1} - x_k) + g_k,
// rho_k = (1 - eta tau)^{-(k+1)} tracked in log-space. The defect is
// evaluated after dividing by rho_k to stay representable.
// ---------------------------------------------------------------------------

struct LinearParams {
  double tau = 0.5;
  double eta = 1.0;
  double beta = 0.0;

  void validate() const;
  double log_rho(int k) const;  // log (1 - eta tau)^{-(k+1)}
};

struct LinearState {
  Vec x_prev, x_cur;
  Vec ty_cur;
  int k = 0;

  Vec v(const LinearParams& prm) const;
  static LinearState init(const YosidaView& view, const Vec& x0,
                          const LinearParams& prm);
};

LinearState linear_cppa_step(const YosidaView& view, const LinearParams& prm,
                             const LinearState& s, const Vec& g_k);
double linear_cppa_defect(const YosidaView& view, const LinearParams& prm,
                          const LinearState& before, const LinearState& after,
                          const Vec& g_k);

// ---------------------------------------------------------------------------
// Driver
// ---------------------------------------------------------------------------

struct SolverRunConfig {
  std::string algorithm;  // see run() for accepted ids
  double lambda = 1.0;
  int budget = 100;
  StepSizes steps = StepSizes::constant(1.0);
  ErrorSchedule schedule = ErrorSchedule::zero();
  SublinearParams sublinear;
  LinearParams linear;
  BaselineParams baseline;
  bool diagnostics = true;       // compute per-step defects via fresh oracles
  double residual_stop = 0.0;    // optional early stop, 0 disables
};

// Runs any solver or baseline id on the given operator. Deterministic given
// the config. On a numeric abort the partial trace is returned with
// complete = false.
IterateTrace run(const OperatorPtr& op, const Vec& x0, const SolverRunConfig& cfg);

}  // namespace mprox

#endif
