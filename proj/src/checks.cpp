#include <cmath>
#include <sstream>

#include "mprox/harness.hpp"
#include "mprox/rng.hpp"

// Invariant suites behind `check <suite>`. Each suite replays the relevant
// iteration on the standard corpus and verifies the defining relations,
// potential-function laws and rate certificates through fresh oracle calls.

namespace mprox::checks {

namespace {

CheckResult result(std::string name, bool pass, std::string detail = {}) {
  return CheckResult{std::move(name), pass, std::move(detail)};
}

std::string fmt(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

std::vector<double> tail_half(const std::vector<double>& v) {
  return {v.begin() + static_cast<long>(v.size() / 2), v.end()};
}

// Residuals at rounding-noise level count as converged; otherwise the noise
// floor times a growing normalizer would register as a spurious trend.
double floor_residual(double r) { return r <= 1e-12 ? 0.0 : r; }

// Certificate shared by the rate suite: the normalized residual sequence is
// finite and shows no upward trend over its last half.
CheckResult bounded_certificate(const std::string& name,
                                std::vector<double> normalized) {
  double sup = 0.0;
  bool finite = true;
  for (double v : normalized) {
    if (!std::isfinite(v)) finite = false;
    sup = std::max(sup, v);
  }
  const double tau = kendall_tau(tail_half(normalized), 1e-9);
  const bool pass = finite && tau <= 0.0;
  return result(name, pass,
                "sup=" + fmt(sup) + " trend_tau=" + fmt(tau) +
                    (finite ? "" : " (non-finite values)"));
}

}  // namespace

// ---------------------------------------------------------------------------

std::vector<CheckResult> operator_invariants(const std::vector<OperatorPtr>& ops) {
  std::vector<CheckResult> out;
  const double tol = 1e-9;
  for (const auto& op : ops) {
    const int n = op->dim();
    Rng rng(/*seed=*/2024, /*stream=*/3);

    // Firm nonexpansiveness of the base resolvent:
    // <Jx - Jy, x - y> >= ||Jx - Jy||^2.
    {
      double worst = 0.0;
      for (int i = 0; i < 300; ++i) {
        const Vec x = 3.0 * rng.gaussian_vec(2 * i, n);
        const Vec y = 3.0 * rng.gaussian_vec(2 * i + 1, n);
        const Vec d = op->resolvent(1.0, x) - op->resolvent(1.0, y);
        worst = std::min(worst, d.dot(x - y) - d.squaredNorm());
      }
      out.push_back(result(op->name() + ": resolvent firmly nonexpansive",
                           worst >= -tol, "min margin=" + fmt(worst)));
    }

    for (double lam : {0.1, 1.0, 10.0}) {
      YosidaView view(op, lam);
      // lambda-cocoercivity of the regularization.
      double worst = 0.0;
      for (int i = 0; i < 300; ++i) {
        const Vec x = 3.0 * rng.gaussian_vec(10000 + 2 * i, n);
        const Vec y = 3.0 * rng.gaussian_vec(10000 + 2 * i + 1, n);
        const Vec d = view.eval(x) - view.eval(y);
        worst = std::min(worst, d.dot(x - y) - lam * d.squaredNorm());
      }
      out.push_back(result(
          op->name() + ": cocoercive (lambda=" + fmt(lam) + ")", worst >= -tol,
          "min margin=" + fmt(worst)));

      // The regularization vanishes at known zeros.
      double res = 0.0;
      for (const Vec& z : op->known_zeros())
        res = std::max(res, view.residual_norm(z));
      if (!op->known_zeros().empty())
        out.push_back(result(
            op->name() + ": zero residual (lambda=" + fmt(lam) + ")",
            res <= 1e-10, "max residual=" + fmt(res)));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

std::vector<CheckResult> step_defects(const std::vector<OperatorPtr>& ops) {
  std::vector<CheckResult> out;
  for (const auto& op : ops) {
    for (const char* alg : {"novel-ppa", "contracting-ppa", "sublinear-cppa",
                            "linear-cppa"}) {
      SolverRunConfig cfg;
      cfg.algorithm = alg;
      cfg.lambda = 1.0;
      cfg.budget = 40;
      cfg.schedule = ErrorSchedule::geometric(0.1, 0.7, /*seed=*/7);
      cfg.sublinear = {0.45, 0.1, 2.0, 0.1, 1.0};
      cfg.linear = {0.5, 0.5, 0.1};
      Vec x0 = Vec::Ones(op->dim());
      IterateTrace trace = run(op, x0, cfg);
      double worst = 0.0;
      for (const auto& r : trace.rows) worst = std::max(worst, r.step_defect);
      const double tol = std::string(alg) == "novel-ppa" ? 1e-9 : 1e-8;
      out.push_back(result(op->name() + ": " + alg + " defect",
                           trace.complete && worst <= tol,
                           "max defect=" + fmt(worst)));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

std::vector<CheckResult> potentials(const std::vector<OperatorPtr>& ops,
                                    bool mutate_theta_sign) {
  std::vector<CheckResult> out;
  const double tol = 1e-8;
  // Deliberate fault injection for meta-testing: flips the direction of the
  // decrease comparisons.
  const double dir = mutate_theta_sign ? -1.0 : 1.0;

  for (const auto& op : ops) {
    if (op->known_zeros().empty()) continue;
    const Vec xs = op->known_zeros().front();
    const Vec x0 = xs + Vec::Ones(op->dim());
    YosidaView view(op, 1.0);
    const ErrorSchedule sched = ErrorSchedule::geometric(0.05, 0.6, /*seed=*/11);

    // Weighted-gap potential: per-step identity with perturbations, monotone
    // decrease at a zero without them.
    {
      double worst_id = 0.0, worst_dec = 0.0;
      ContractingState s_in = ContractingState::init(view, x0, 1.0);
      ContractingState s_ex = s_in;
      double theta_ex =
          potential_theta(view, s_ex.A_cur, s_ex.x_cur, s_ex.v(), xs);
      for (int k = 0; k < 40; ++k) {
        const Vec g = sched.g(k, op->dim());
        ContractingState n_in = contracting_ppa_step(view, s_in, 1.0, g);
        const double lhs =
            potential_theta(view, n_in.A_cur, n_in.x_cur, n_in.v(), xs);
        const double prev =
            potential_theta(view, s_in.A_cur, s_in.x_cur, s_in.v(), xs);
        const double bracket =
            (s_in.A_cur * n_in.A_cur / 1.0) *
                (n_in.x_cur - s_in.x_cur)
                    .dot(view.eval(n_in.x_cur) - view.eval(s_in.x_cur)) +
            0.5 * (n_in.v() - s_in.v()).squaredNorm() +
            (n_in.v() - xs).dot(g);
        const double scale = std::max({1.0, std::abs(prev), std::abs(lhs)});
        worst_id = std::max(worst_id, std::abs(lhs - (prev - bracket)) / scale);
        s_in = std::move(n_in);

        ContractingState n_ex =
            contracting_ppa_step(view, s_ex, 1.0, Vec::Zero(op->dim()));
        const double theta_next =
            potential_theta(view, n_ex.A_cur, n_ex.x_cur, n_ex.v(), xs);
        worst_dec = std::max(
            worst_dec, dir * (theta_next - theta_ex) / std::max(1.0, theta_ex));
        theta_ex = theta_next;
        s_ex = std::move(n_ex);
      }
      out.push_back(result(op->name() + ": weighted-gap potential identity",
                           worst_id <= tol, "max defect=" + fmt(worst_id)));
      out.push_back(result(op->name() + ": weighted-gap potential decrease",
                           worst_dec <= tol, "max increase=" + fmt(worst_dec)));
    }

    // Sublinear-family potential: one-sided decrease law with perturbations.
    {
      SublinearParams prm{0.45, 0.1, 2.0, 0.1, 1.0};
      SublinearState s = SublinearState::init(view, x0, prm);
      double worst = 0.0;
      for (int k = 0; k < 40; ++k) {
        const Vec g = sched.g(k, op->dim());
        SublinearState n = sublinear_cppa_step(view, prm, s, g);
        const double tk = prm.tau(k);
        const double lhs = potential_theta_sub(view, tk, prm.p, prm.beta,
                                               n.x_cur, n.v(prm), xs);
        const double prev = potential_theta_sub(view, prm.tau(k - 1), prm.p,
                                                prm.beta, s.x_cur, s.v(prm), xs);
        const double bracket =
            (1.0 - tk) / std::pow(tk, prm.p + 1.0) *
                (n.x_cur - s.x_cur).dot(view.eval(n.x_cur) - view.eval(s.x_cur)) +
            0.5 * (n.v(prm) - s.v(prm)).squaredNorm() +
            prm.mu / std::pow(tk, prm.p - 1.0) *
                (s.x_cur - xs).dot(view.eval(s.x_cur)) +
            prm.beta * (2.0 - tk) / (2.0 * tk) *
                (n.x_cur - s.x_cur).squaredNorm() +
            (n.v(prm) - xs).dot(g);
        const double scale = std::max({1.0, std::abs(prev), std::abs(lhs)});
        worst = std::max(worst, dir * (lhs - (prev - bracket)) / scale);
        s = std::move(n);
      }
      out.push_back(result(op->name() + ": sublinear potential decrease",
                           worst <= tol, "max violation=" + fmt(worst)));
    }

    // Geometric-family potential: exact per-step balance.
    {
      LinearParams prm{0.5, 0.5, 0.1};
      LinearState s = LinearState::init(view, x0, prm);
      double worst_id = 0.0, worst_dec = 0.0;
      double theta = potential_theta_lin(view, 0.0, prm.beta, s.x_cur,
                                         s.v(prm), xs);
      for (int k = 0; k < 40; ++k) {
        const Vec g = sched.g(k, op->dim());
        LinearState n = linear_cppa_step(view, prm, s, g);
        const double rho = std::exp(prm.log_rho(k));
        const double lhs = potential_theta_lin(view, prm.log_rho(k), prm.beta,
                                               n.x_cur, n.v(prm), xs);
        const double prev = potential_theta_lin(view, k > 0 ? prm.log_rho(k - 1) : 0.0,
                                                prm.beta, s.x_cur, s.v(prm), xs);
        const double bracket =
            (1.0 - prm.tau) / prm.tau * rho *
                (n.x_cur - s.x_cur).dot(view.eval(n.x_cur) - view.eval(s.x_cur)) +
            0.5 * (n.v(prm) - s.v(prm)).squaredNorm() +
            prm.tau * (1.0 - prm.eta) * rho *
                (s.x_cur - xs).dot(view.eval(s.x_cur)) +
            prm.beta * (2.0 - prm.tau) / (2.0 * prm.tau) *
                (n.x_cur - s.x_cur).squaredNorm() +
            (n.v(prm) - xs).dot(g);
        const double scale = std::max({1.0, std::abs(prev), std::abs(lhs)});
        worst_id = std::max(worst_id, std::abs(lhs - (prev - bracket)) / scale);
        s = std::move(n);
        (void)theta;
      }
      // Exact run: potential nonincreasing.
      LinearState se = LinearState::init(view, x0, prm);
      theta = potential_theta_lin(view, 0.0, prm.beta, se.x_cur, se.v(prm), xs);
      for (int k = 0; k < 40; ++k) {
        LinearState n = linear_cppa_step(view, prm, se, Vec::Zero(op->dim()));
        const double theta_next = potential_theta_lin(
            view, prm.log_rho(k), prm.beta, n.x_cur, n.v(prm), xs);
        worst_dec = std::max(worst_dec,
                             dir * (theta_next - theta) / std::max(1.0, theta));
        theta = theta_next;
        se = std::move(n);
      }
      out.push_back(result(op->name() + ": geometric potential identity",
                           worst_id <= tol, "max defect=" + fmt(worst_id)));
      out.push_back(result(op->name() + ": geometric potential decrease",
                           worst_dec <= tol, "max increase=" + fmt(worst_dec)));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

std::vector<CheckResult> rates(const std::vector<OperatorPtr>& ops) {
  std::vector<CheckResult> out;
  for (const auto& op : ops) {
    Vec x0 = Vec::Ones(op->dim());

    {
      SolverRunConfig cfg;
      cfg.algorithm = "novel-ppa";
      cfg.budget = 300;
      IterateTrace t = run(op, x0, cfg);
      std::vector<double> norm;
      for (const auto& r : t.rows)
        if (r.k >= 10) norm.push_back(floor_residual(r.residual) * std::sqrt(r.k));
      out.push_back(bounded_certificate(
          op->name() + ": rate certificate sqrt-k", std::move(norm)));
    }
    {
      SolverRunConfig cfg;
      cfg.algorithm = "contracting-ppa";
      cfg.budget = 300;
      IterateTrace t = run(op, x0, cfg);
      std::vector<double> norm;
      for (const auto& r : t.rows)
        if (r.k >= 10) norm.push_back(floor_residual(r.residual) * r.A);
      out.push_back(bounded_certificate(
          op->name() + ": rate certificate A_k", std::move(norm)));
    }
    {
      SolverRunConfig cfg;
      cfg.algorithm = "sublinear-cppa";
      cfg.budget = 300;
      cfg.sublinear = {0.45, 0.1, 2.0, 0.1, 1.0};
      IterateTrace t = run(op, x0, cfg);
      std::vector<double> norm;
      for (const auto& r : t.rows)
        if (r.k >= 10)
          norm.push_back(floor_residual(r.residual) *
                         std::pow(1.0 / r.tau, cfg.sublinear.p));
      out.push_back(bounded_certificate(
          op->name() + ": rate certificate k^p", std::move(norm)));
    }
    {
      SolverRunConfig cfg;
      cfg.algorithm = "linear-cppa";
      cfg.budget = 100;
      cfg.linear = {0.5, 0.5, 0.1};
      IterateTrace t = run(op, x0, cfg);
      // Log-space: log residual + log growth must stay bounded above by the
      // initial level plus a fixed margin.
      double worst = -std::numeric_limits<double>::infinity();
      const double base = std::log(std::max(t.rows.front().residual, 1e-13));
      for (const auto& r : t.rows) {
        if (r.k < 1 || r.residual <= 1e-13) continue;  // converged to the zero
        const double lg = std::isnan(r.log_growth) ? 0.0 : r.log_growth;
        worst = std::max(worst, std::log(r.residual) + lg - base);
      }
      out.push_back(result(op->name() + ": rate certificate geometric",
                           t.complete && worst <= std::log(1e4),
                           "max log excess=" + fmt(worst)));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

std::vector<CheckResult> equivalences(const std::vector<OperatorPtr>& ops) {
  std::vector<CheckResult> out;
  for (const auto& op : ops) {
    const int n = op->dim();
    YosidaView view(op, 1.0);
    const Vec zero_g = Vec::Zero(n);
    Vec start = Vec::Ones(n);

    // Anchored fixed-point iteration == exact accelerated scheme started from
    // the composed point, with unit steps and unit initial weight.
    {
      const Vec z0 = start;
      Vec z = z0;
      Vec x = view.resolvent(1.0, z0);
      const Vec s0 = z0;  // x + T_lambda(x) for the composed start
      double worst = 0.0;
      for (int k = 0; k < 100; ++k) {
        z = halpern_step(view, z0, z, k);
        x = contracting_ppa_exact_step(view, s0, x, static_cast<double>(k) + 1.0,
                                       1.0);
        worst = std::max(worst, (view.resolvent(1.0, z) - x).norm());
      }
      out.push_back(result(op->name() + ": anchored-iteration equivalence",
                           worst <= 1e-10, "max deviation=" + fmt(worst)));
    }

    // Sublinear scheme with p=1, mu=0, beta=0, a=1 reduces to the accelerated
    // scheme with unit steps and zero initial weight.
    {
      SublinearParams prm{1.0, 0.0, 1.0, 0.0, 1.0};
      SublinearState s = SublinearState::init(view, start, prm);
      ContractingState c = ContractingState::init(view, start, 1.0, /*A0=*/0.0);
      double worst = 0.0;
      for (int k = 0; k < 50; ++k) {
        s = sublinear_cppa_step(view, prm, s, zero_g);
        c = contracting_ppa_step(view, c, 1.0, zero_g);
        worst = std::max(worst, (s.x_cur - c.x_cur).norm());
      }
      out.push_back(result(op->name() + ": sublinear reduction", worst <= 1e-9,
                           "max deviation=" + fmt(worst)));
    }

    // Geometric scheme with eta=1, beta=0 reduces to the accelerated scheme
    // with unit initial weight and geometrically growing steps.
    {
      LinearParams prm{0.5, 1.0, 0.0};
      LinearState s = LinearState::init(view, start, prm);
      ContractingState c = ContractingState::init(view, start, prm.tau, /*A0=*/1.0);
      double worst = 0.0;
      double A = 1.0;
      for (int k = 0; k < 30; ++k) {
        s = linear_cppa_step(view, prm, s, zero_g);
        const double a_next = prm.tau * A / (1.0 - prm.tau);
        c = contracting_ppa_step(view, c, a_next, zero_g);
        A += a_next;
        worst = std::max(worst, (s.x_cur - c.x_cur).norm());
      }
      out.push_back(result(op->name() + ": geometric reduction", worst <= 1e-9,
                           "max deviation=" + fmt(worst)));
    }
  }
  return out;
}

}  // namespace mprox::checks
