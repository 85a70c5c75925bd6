#include "mprox/solvers.hpp"

#include <cmath>

namespace mprox {

// ---------------------------------------------------------------------------
// Novel PPA
// ---------------------------------------------------------------------------

Vec novel_ppa_step(const YosidaView& view, const Vec& x_k, double a_next,
                   const Vec& g_k) {
  if (!(a_next > 0.0)) throw ConfigError("step size must be positive");
  return view.resolvent(a_next, x_k - g_k);
}

double novel_ppa_defect(const YosidaView& view, const Vec& x_k, double a_next,
                        const Vec& g_k, const Vec& x_next) {
  return (a_next * view.eval(x_next) + x_next - x_k + g_k).norm();
}

// ---------------------------------------------------------------------------
// Contracting PPA
// ---------------------------------------------------------------------------

ContractingState ContractingState::init(const YosidaView& view, const Vec& x0,
                                        double a0, double A0) {
  if (!(a0 > 0.0)) throw ConfigError("a0 must be positive");
  if (A0 < 0.0) A0 = a0;
  ContractingState s;
  s.x_prev = x0;
  s.x_cur = x0;
  s.v_cur = x0;
  s.A_prev = 0.0;
  s.A_cur = A0;
  s.a_cur = a0;
  s.ty_cur = view.eval(x0);
  return s;
}

ContractingState contracting_ppa_step(const YosidaView& view,
                                      const ContractingState& s, double a_next,
                                      const Vec& g_k) {
  if (!(a_next > 0.0)) throw ConfigError("step size must be positive");
  const double A_next = s.A_cur + a_next;

  const Vec y = s.x_cur + (a_next * s.A_prev) / (s.a_cur * A_next) * (s.x_cur - s.x_prev);
  const Vec z = y + (a_next * s.A_cur / A_next) * s.ty_cur;
  const Vec w = z - (a_next / A_next) * g_k;
  Vec x_next = view.resolvent(a_next, w);

  ContractingState out;
  out.x_prev = s.x_cur;
  out.x_cur = x_next;
  out.v_cur = (A_next * x_next - s.A_cur * s.x_cur) / a_next;
  out.A_prev = s.A_cur;
  out.A_cur = A_next;
  out.a_cur = a_next;
  out.ty_cur = (w - x_next) / a_next;  // T_lambda(x_{k+1}) from the step relation
  return out;
}

Vec contracting_ppa_exact_step(const YosidaView& view, const Vec& s0,
                               const Vec& x_k, double A_k, double a_next) {
  if (!(a_next > 0.0)) throw ConfigError("step size must be positive");
  const double A_next = A_k + a_next;
  return view.resolvent(a_next, (a_next / A_next) * s0 + (A_k / A_next) * x_k);
}

double contracting_ppa_defect(const YosidaView& view,
                              const ContractingState& before,
                              const ContractingState& after, const Vec& g_k) {
  return (after.A_cur * view.eval(after.x_cur) -
          before.A_cur * view.eval(before.x_cur) + after.v() - before.v() + g_k)
      .norm();
}

// ---------------------------------------------------------------------------
// Sublinear Contracting PPA
// ---------------------------------------------------------------------------

void SublinearParams::validate() const {
  if (!(mu >= 0.0 && mu < 1.0)) throw ConfigError("sublinear: mu must be in [0,1)");
  if (!(p >= 1.0)) throw ConfigError("sublinear: p must be >= 1");
  if (!(beta >= 0.0)) throw ConfigError("sublinear: beta must be >= 0");
  if (!(a > 0.0 && a <= (1.0 - mu) / p))
    throw ConfigError("sublinear: requires 0 < a <= (1-mu)/p");
  if (!(tau_init > 0.0 && tau_init <= 1.0))
    throw ConfigError("sublinear: tau_{-1} must be in (0,1]");
}

double SublinearParams::tau(int k) const {
  if (k < 0) return tau_init;
  return 1.0 / (a * static_cast<double>(k) + 1.0);
}

Vec SublinearState::v(const SublinearParams& prm) const {
  const double t = prm.tau(k - 1);
  return x_cur / t - (1.0 - t) / t * x_prev;
}

SublinearState SublinearState::init(const YosidaView& view, const Vec& x0,
                                    const SublinearParams& prm) {
  prm.validate();
  SublinearState s;
  s.x_prev = x0;
  s.x_cur = x0;
  s.ty_cur = view.eval(x0);
  s.k = 0;
  return s;
}

SublinearState sublinear_cppa_step(const YosidaView& view,
                                   const SublinearParams& prm,
                                   const SublinearState& s, const Vec& g_k) {
  const int k = s.k;
  const double tau = prm.tau(k);
  const double inv_tau_p = std::pow(1.0 / tau, prm.p);
  const double denom = 1.0 / tau + prm.beta;
  const double sigma = inv_tau_p / denom;

  const Vec w = (1.0 - tau) * inv_tau_p * s.ty_cur +
                (1.0 - tau) / tau * s.x_cur + s.v(prm) + prm.beta * s.x_cur - g_k;
  Vec x_next = view.resolvent(sigma, w / denom);

  SublinearState out;
  out.x_prev = s.x_cur;
  out.x_cur = x_next;
  out.ty_cur = (w - denom * x_next) / inv_tau_p;
  out.k = k + 1;
  return out;
}

double sublinear_cppa_defect(const YosidaView& view, const SublinearParams& prm,
                             const SublinearState& before,
                             const SublinearState& after, const Vec& g_k) {
  const double tau = prm.tau(before.k);
  const double inv_tau_p = std::pow(1.0 / tau, prm.p);
  return (inv_tau_p * view.eval(after.x_cur) -
          (1.0 - tau) * inv_tau_p * view.eval(before.x_cur) +
          after.v(prm) - before.v(prm) +
          prm.beta * (after.x_cur - before.x_cur) + g_k)
      .norm();
}

// ---------------------------------------------------------------------------
// Linear Contracting PPA
// ---------------------------------------------------------------------------

void LinearParams::validate() const {
  if (!(tau > 0.0 && tau < 1.0)) throw ConfigError("linear: tau must be in (0,1)");
  if (!(eta > 0.0 && eta <= 1.0)) throw ConfigError("linear: eta must be in (0,1]");
  if (!(beta >= 0.0)) throw ConfigError("linear: beta must be >= 0");
}

double LinearParams::log_rho(int k) const {
  return -static_cast<double>(k + 1) * std::log1p(-eta * tau);
}

Vec LinearState::v(const LinearParams& prm) const {
  return x_cur / prm.tau - (1.0 - prm.tau) / prm.tau * x_prev;
}

LinearState LinearState::init(const YosidaView& view, const Vec& x0,
                              const LinearParams& prm) {
  prm.validate();
  LinearState s;
  s.x_prev = x0;
  s.x_cur = x0;
  s.ty_cur = view.eval(x0);
  s.k = 0;
  return s;
}

LinearState linear_cppa_step(const YosidaView& view, const LinearParams& prm,
                             const LinearState& s, const Vec& g_k) {
  const int k = s.k;
  const double lr = prm.log_rho(k);
  if (lr > 690.0)
    throw NumericError("linear cppa: growth factor exceeds double range");
  const double rho = std::exp(lr);
  const double denom = 1.0 / prm.tau + prm.beta;
  const double sigma = rho / denom;

  const Vec w = (1.0 - prm.tau) * rho * s.ty_cur +
                (1.0 - prm.tau) / prm.tau * s.x_cur + s.v(prm) +
                prm.beta * s.x_cur - g_k;
  Vec x_next = view.resolvent(sigma, w / denom);

  LinearState out;
  out.x_prev = s.x_cur;
  out.x_cur = x_next;
  out.ty_cur = (w - denom * x_next) / rho;
  out.k = k + 1;
  return out;
}

double linear_cppa_defect(const YosidaView& view, const LinearParams& prm,
                          const LinearState& before, const LinearState& after,
                          const Vec& g_k) {
  // Relation divided by rho_k so both sides stay representable.
  const double rho = std::exp(prm.log_rho(before.k));
  return (view.eval(after.x_cur) - (1.0 - prm.tau) * view.eval(before.x_cur) +
          (after.v(prm) - before.v(prm) +
           prm.beta * (after.x_cur - before.x_cur) + g_k) / rho)
      .norm();
}

// ---------------------------------------------------------------------------
// Driver
// ---------------------------------------------------------------------------

namespace {

double dist_to_zero(const MonotoneOperator& op, const Vec& x) {
  double best = std::numeric_limits<double>::quiet_NaN();
  for (const Vec& z : op.known_zeros()) {
    const double d = (x - z).norm();
    if (std::isnan(best) || d < best) best = d;
  }
  return best;
}

struct RunContext {
  const OperatorPtr& op;
  const YosidaView& view;
  const SolverRunConfig& cfg;
  IterateTrace& trace;

  void push(TraceRow row) {
    row.residual = view.residual_norm(row.x);
    row.dist_to_zero = dist_to_zero(*op, row.x);
    trace.rows.push_back(std::move(row));
  }
  bool should_stop() const {
    return cfg.residual_stop > 0.0 &&
           trace.rows.back().residual <= cfg.residual_stop;
  }
};

void run_novel(RunContext& ctx, const Vec& x0) {
  Vec x = x0;
  TraceRow r0;
  r0.k = 0;
  r0.x = x;
  ctx.push(r0);
  for (int k = 0; k < ctx.cfg.budget; ++k) {
    if (ctx.should_stop()) break;
    const double a = ctx.cfg.steps.at(k);
    const Vec g = ctx.cfg.schedule.g(k, ctx.view.dim());
    Vec x_next = novel_ppa_step(ctx.view, x, a, g);
    TraceRow r;
    r.k = k + 1;
    r.x = x_next;
    r.a = a;
    r.sigma = a;
    if (ctx.cfg.diagnostics)
      r.step_defect = novel_ppa_defect(ctx.view, x, a, g, x_next);
    x = std::move(x_next);
    ctx.push(std::move(r));
  }
}

void run_contracting(RunContext& ctx, const Vec& x0) {
  ContractingState s = ContractingState::init(ctx.view, x0, ctx.cfg.steps.at(0));
  TraceRow r0;
  r0.k = 0;
  r0.x = s.x_cur;
  r0.v = s.v();
  r0.a = s.a_cur;
  r0.A = s.A_cur;
  ctx.push(r0);
  for (int k = 0; k < ctx.cfg.budget; ++k) {
    if (ctx.should_stop()) break;
    const double a = ctx.cfg.steps.at(k);
    const Vec g = ctx.cfg.schedule.g(k, ctx.view.dim());
    ContractingState next = contracting_ppa_step(ctx.view, s, a, g);
    TraceRow r;
    r.k = k + 1;
    r.x = next.x_cur;
    r.v = next.v();
    r.a = a;
    r.A = next.A_cur;
    r.sigma = a;
    if (ctx.cfg.diagnostics)
      r.step_defect = contracting_ppa_defect(ctx.view, s, next, g);
    s = std::move(next);
    ctx.push(std::move(r));
  }
}

void run_sublinear(RunContext& ctx, const Vec& x0) {
  const SublinearParams& prm = ctx.cfg.sublinear;
  SublinearState s = SublinearState::init(ctx.view, x0, prm);
  TraceRow r0;
  r0.k = 0;
  r0.x = s.x_cur;
  r0.v = s.v(prm);
  r0.tau = prm.tau(-1);
  ctx.push(r0);
  for (int k = 0; k < ctx.cfg.budget; ++k) {
    if (ctx.should_stop()) break;
    const Vec g = ctx.cfg.schedule.g(k, ctx.view.dim());
    SublinearState next = sublinear_cppa_step(ctx.view, prm, s, g);
    const double tau = prm.tau(k);
    TraceRow r;
    r.k = k + 1;
    r.x = next.x_cur;
    r.v = next.v(prm);
    r.tau = tau;
    r.sigma = std::pow(1.0 / tau, prm.p) / (1.0 / tau + prm.beta);
    if (ctx.cfg.diagnostics)
      r.step_defect = sublinear_cppa_defect(ctx.view, prm, s, next, g);
    s = std::move(next);
    ctx.push(std::move(r));
  }
}

void run_linear(RunContext& ctx, const Vec& x0) {
  const LinearParams& prm = ctx.cfg.linear;
  LinearState s = LinearState::init(ctx.view, x0, prm);
  TraceRow r0;
  r0.k = 0;
  r0.x = s.x_cur;
  r0.v = s.v(prm);
  r0.tau = prm.tau;
  r0.log_growth = 0.0;
  ctx.push(r0);
  for (int k = 0; k < ctx.cfg.budget; ++k) {
    if (ctx.should_stop()) break;
    const Vec g = ctx.cfg.schedule.g(k, ctx.view.dim());
    LinearState next = linear_cppa_step(ctx.view, prm, s, g);
    TraceRow r;
    r.k = k + 1;
    r.x = next.x_cur;
    r.v = next.v(prm);
    r.tau = prm.tau;
    r.log_growth = prm.log_rho(k);
    r.sigma = std::exp(prm.log_rho(k)) / (1.0 / prm.tau + prm.beta);
    if (ctx.cfg.diagnostics)
      r.step_defect = linear_cppa_defect(ctx.view, prm, s, next, g);
    s = std::move(next);
    ctx.push(std::move(r));
  }
}

void run_classical(RunContext& ctx, const Vec& x0) {
  Vec x = x0;
  TraceRow r0;
  r0.k = 0;
  r0.x = x;
  ctx.push(r0);
  for (int k = 0; k < ctx.cfg.budget; ++k) {
    if (ctx.should_stop()) break;
    const double a = ctx.cfg.steps.at(k);
    x = classical_ppa_step(ctx.view.base(), x, a);
    TraceRow r;
    r.k = k + 1;
    r.x = x;
    r.a = a;
    r.sigma = a;
    ctx.push(std::move(r));
  }
}

void run_halpern(RunContext& ctx, const Vec& x0) {
  const bool composed = ctx.cfg.baseline.halpern_record_composed;
  const Vec z0 = x0;
  Vec z = z0;
  auto record = [&](int k, const Vec& zk) {
    TraceRow r;
    r.k = k;
    r.x = composed ? ctx.view.resolvent(1.0, zk) : zk;
    ctx.push(std::move(r));
  };
  record(0, z);
  for (int k = 0; k < ctx.cfg.budget; ++k) {
    if (ctx.should_stop()) break;
    z = halpern_step(ctx.view, z0, z, k);
    record(k + 1, z);
  }
}

void run_accelerated(RunContext& ctx, const Vec& x0) {
  AcceleratedPpaState s = accelerated_ppa_init(x0);
  TraceRow r0;
  r0.k = 0;
  r0.x = s.x_cur;
  ctx.push(r0);
  for (int k = 0; k < ctx.cfg.budget; ++k) {
    if (ctx.should_stop()) break;
    s = accelerated_ppa_step(ctx.view, s);
    TraceRow r;
    r.k = k + 1;
    r.x = s.x_cur;
    ctx.push(std::move(r));
  }
}

template <typename State, typename StepFn>
void run_inertial(RunContext& ctx, State s, StepFn step) {
  TraceRow r0;
  r0.k = 0;
  r0.x = s.x_cur;
  ctx.push(r0);
  for (int k = 0; k < ctx.cfg.budget; ++k) {
    if (ctx.should_stop()) break;
    s = step(s);
    TraceRow r;
    r.k = k + 1;
    r.x = s.x_cur;
    ctx.push(std::move(r));
  }
}

}  // namespace

IterateTrace run(const OperatorPtr& op, const Vec& x0,
                 const SolverRunConfig& cfg) {
  if (cfg.budget < 0) throw ConfigError("budget must be nonnegative");
  if (x0.size() != op->dim()) throw ConfigError("x0: dimension mismatch");
  ensure_finite(x0, "x0");

  YosidaView view(op, cfg.lambda);
  IterateTrace trace;
  trace.algorithm = cfg.algorithm;
  trace.lambda = cfg.lambda;

  RunContext ctx{op, view, cfg, trace};
  try {
    if (cfg.algorithm == "novel-ppa") {
      run_novel(ctx, x0);
    } else if (cfg.algorithm == "contracting-ppa") {
      run_contracting(ctx, x0);
    } else if (cfg.algorithm == "sublinear-cppa") {
      run_sublinear(ctx, x0);
    } else if (cfg.algorithm == "linear-cppa") {
      run_linear(ctx, x0);
    } else if (cfg.algorithm == "classical-ppa") {
      run_classical(ctx, x0);
    } else if (cfg.algorithm == "halpern") {
      run_halpern(ctx, x0);
    } else if (cfg.algorithm == "accelerated-ppa") {
      run_accelerated(ctx, x0);
    } else if (cfg.algorithm == "ripa") {
      cfg.baseline.ripa.validate();
      RipaState s{x0, x0, 1};
      run_inertial(ctx, s, [&](const RipaState& st) {
        return ripa_step(*op, cfg.baseline.ripa, st);
      });
    } else if (cfg.algorithm == "prina") {
      cfg.baseline.prina.validate();
      PrinaState s{x0, x0, 1};
      run_inertial(ctx, s, [&](const PrinaState& st) {
        return prina_step(*op, cfg.baseline.prina, st);
      });
    } else if (cfg.algorithm == "cripa") {
      cfg.baseline.cripa.validate();
      CripaState s{x0, x0, x0, 1.0, 1};
      run_inertial(ctx, s, [&](const CripaState& st) {
        return cripa_step(*op, cfg.baseline.cripa, st);
      });
    } else {
      throw ConfigError("unknown algorithm id: " + cfg.algorithm);
    }
  } catch (const NumericError& e) {
    trace.complete = false;
    trace.abort_message = e.what();
  }
  return trace;
}

}  // namespace mprox
