#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "mprox/problems.hpp"
#include "mprox/solvers.hpp"

using namespace mprox;

namespace {

OperatorPtr scalar_identity() {
  Mat m(1, 1);
  m << 1.0;
  return make_affine(m, Vec::Zero(1), "scalar-identity");
}

Vec vec1(double v) {
  Vec x(1);
  x[0] = v;
  return x;
}

// Independent oracle: solve f(x) = 0 for a scalar monotone-increasing f by
// bisection, using only fresh operator evaluations.
double bisect(const std::function<double(double)>& f, double lo, double hi) {
  REQUIRE(f(lo) < 0.0);
  REQUIRE(f(hi) > 0.0);
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("plain step on the regularization: closed form and defect") {
  auto op = scalar_identity();
  YosidaView view(op, 1.0);  // T_lambda(x) = x/2
  const Vec x0 = vec1(2.0);
  const Vec g = vec1(0.1);
  const double a = 2.0;
  // 0 = a x/2 + x - (x0 - g)  =>  x = (x0 - g)/(1 + a/2)
  const Vec x1 = novel_ppa_step(view, x0, a, g);
  CHECK(x1[0] == doctest::Approx(1.9 / 2.0).epsilon(1e-12));
  CHECK(novel_ppa_defect(view, x0, a, g, x1) <= 1e-12);
}

TEST_CASE("step monotonicity of the plain scheme without perturbations") {
  for (const auto& op : corpus()) {
    YosidaView view(op, 1.0);
    Vec x = Vec::Ones(op->dim());
    const Vec g = Vec::Zero(op->dim());
    double prev = std::numeric_limits<double>::infinity();
    for (int k = 0; k < 200; ++k) {
      const Vec x_next = novel_ppa_step(view, x, 1.0, g);
      const double move = (x_next - x).norm();
      CHECK(move <= prev + 1e-10);
      prev = move;
      x = x_next;
    }
  }
}

TEST_CASE("accelerated scheme: production path vs conserved-vector path") {
  // With g == 0 the quantity A_k T_lambda(x_k) + v_k is conserved, giving an
  // independent closed form for every iterate.
  for (const auto& op : {make_rotation(), make_random_affine(10, 42), make_abs(5)}) {
    YosidaView view(op, 1.0);
    const Vec x0 = Vec::Ones(op->dim());
    const Vec g = Vec::Zero(op->dim());
    ContractingState s = ContractingState::init(view, x0, 1.0);
    const Vec s0 = s.A_cur * view.eval(x0) + s.v();
    Vec x_exact = x0;
    double A = s.A_cur;
    double worst = 0.0;
    for (int k = 0; k < 50; ++k) {
      s = contracting_ppa_step(view, s, 1.0, g);
      x_exact = contracting_ppa_exact_step(view, s0, x_exact, A, 1.0);
      A += 1.0;
      worst = std::max(worst, (s.x_cur - x_exact).norm());
      CHECK((s.ty_cur - view.eval(s.x_cur)).norm() <= 1e-10);  // cached value
      CHECK(s.A_cur == doctest::Approx(A));
    }
    CHECK(worst <= 1e-10);
  }
}

TEST_CASE("accelerated scheme defect with perturbations") {
  auto op = make_random_affine(10, 42);
  YosidaView view(op, 1.0);
  ContractingState s = ContractingState::init(view, Vec::Ones(10), 0.5);
  ErrorSchedule sched = ErrorSchedule::geometric(0.2, 0.8, 3);
  for (int k = 0; k < 30; ++k) {
    const Vec g = sched.g(k, 10);
    ContractingState n = contracting_ppa_step(view, s, 0.5 + 0.1 * k, g);
    CHECK(contracting_ppa_defect(view, s, n, g) <= 1e-8);
    s = std::move(n);
  }
}

TEST_CASE("sublinear step against a scalar bisection oracle") {
  auto op = scalar_identity();
  YosidaView view(op, 1.0);  // T_lambda(x) = x/2
  SublinearParams prm{0.5, 0.5, 1.0, 0.0, 1.0};
  SublinearState s = SublinearState::init(view, vec1(2.0), prm);
  const Vec g = Vec::Zero(1);

  for (int k = 0; k < 5; ++k) {
    const double tau = prm.tau(k);
    const double tprev = prm.tau(k - 1);
    const double xk = s.x_cur[0], xkm1 = s.x_prev[0];
    const double vk = xk / tprev - (1.0 - tprev) / tprev * xkm1;
    auto f = [&](double x) {
      const double v_next = x / tau - (1.0 - tau) / tau * xk;
      return (1.0 / tau) * view.eval(vec1(x))[0] -
             ((1.0 - tau) / tau) * view.eval(vec1(xk))[0] + v_next - vk;
    };
    const double oracle = bisect(f, -10.0, 10.0);
    s = sublinear_cppa_step(view, prm, s, g);
    CHECK(s.x_cur[0] == doctest::Approx(oracle).epsilon(1e-10));
  }
  // First step has tau_0 = 1, so the relation collapses to
  // T_lambda(x1) + x1 - x0 = 0  =>  x1 = 4/3 for x0 = 2.
  SublinearState fresh = SublinearState::init(view, vec1(2.0), prm);
  fresh = sublinear_cppa_step(view, prm, fresh, g);
  CHECK(fresh.x_cur[0] == doctest::Approx(4.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("geometric-rate step against a scalar bisection oracle") {
  auto op = scalar_identity();
  YosidaView view(op, 1.0);
  LinearParams prm{0.5, 0.5, 1.0};
  LinearState s = LinearState::init(view, vec1(2.0), prm);
  const Vec g = Vec::Zero(1);

  for (int k = 0; k < 5; ++k) {
    const double rho = std::exp(prm.log_rho(k));
    const double xk = s.x_cur[0], xkm1 = s.x_prev[0];
    const double vk = xk / prm.tau - (1.0 - prm.tau) / prm.tau * xkm1;
    auto f = [&](double x) {
      const double v_next = x / prm.tau - (1.0 - prm.tau) / prm.tau * xk;
      return rho * view.eval(vec1(x))[0] -
             (1.0 - prm.tau) * rho * view.eval(vec1(xk))[0] + v_next - vk +
             prm.beta * (x - xk);
    };
    const double oracle = bisect(f, -10.0, 10.0);
    s = linear_cppa_step(view, prm, s, g);
    CHECK(s.x_cur[0] == doctest::Approx(oracle).epsilon(1e-10));
  }
  // Hand-solved first step: (4/3)(x/2) - (1/2)(4/3)(1) + (2x - 2) - 2
  //                          + (x - 2) = 0  =>  x = 20/11.
  LinearState fresh = LinearState::init(view, vec1(2.0), prm);
  fresh = linear_cppa_step(view, prm, fresh, g);
  CHECK(fresh.x_cur[0] == doctest::Approx(20.0 / 11.0).epsilon(1e-12));
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(SublinearParams({0.6, 0.5, 1.0, 0.0, 1.0}).validate(),
                  ConfigError);  // a > (1-mu)/p
  CHECK_THROWS_AS(SublinearParams({0.1, 1.0, 1.0, 0.0, 1.0}).validate(),
                  ConfigError);  // mu = 1
  CHECK_THROWS_AS(LinearParams({1.0, 0.5, 0.0}).validate(), ConfigError);
  CHECK_THROWS_AS(LinearParams({0.5, 1.5, 0.0}).validate(), ConfigError);
  CHECK_THROWS_AS(StepSizes::constant(0.0), ConfigError);
  CHECK_THROWS_AS(StepSizes::list({1.0, -2.0}), ConfigError);
}

TEST_CASE("error schedules: closed-form sums and exact magnitudes") {
  auto geo = ErrorSchedule::geometric(0.1, 0.5, 9);
  double partial = 0.0;
  for (int k = 0; k < 100; ++k) {
    partial += geo.delta(k);
    CHECK(geo.g(k, 4).norm() == doctest::Approx(geo.delta(k)).epsilon(1e-12));
  }
  CHECK(geo.delta_sum() == doctest::Approx(0.2));
  CHECK(partial <= geo.delta_sum() + 1e-12);

  auto poly = ErrorSchedule::polynomial(1.0, 9);
  partial = 0.0;
  for (int k = 0; k < 20000; ++k) partial += poly.delta(k);
  CHECK(partial <= poly.delta_sum());
  CHECK(poly.delta_sum() == doctest::Approx(M_PI * M_PI / 6.0));

  CHECK(ErrorSchedule::zero().g(3, 2).norm() == 0.0);
  CHECK_THROWS_AS(ErrorSchedule::geometric(0.1, 1.0, 0), ConfigError);

  // json round trip preserves the schedule
  auto back = ErrorSchedule::from_json(geo.to_json(), 9);
  for (int k = 0; k < 5; ++k) CHECK((back.g(k, 3) - geo.g(k, 3)).norm() == 0.0);
}

TEST_CASE("driver: budgets, stopping, and partial traces") {
  auto op = scalar_identity();
  SolverRunConfig cfg;
  cfg.algorithm = "novel-ppa";
  cfg.budget = 0;
  IterateTrace t = run(op, vec1(2.0), cfg);
  CHECK(t.rows.size() == 1);
  CHECK(t.complete);
  CHECK(t.rows[0].residual == doctest::Approx(1.0));  // |2/2|

  cfg.budget = 500;
  cfg.residual_stop = 1e-3;
  t = run(op, vec1(2.0), cfg);
  CHECK(t.rows.size() < 500);
  CHECK(t.rows.back().residual <= 1e-3);

  cfg.algorithm = "no-such-alg";
  CHECK_THROWS_AS(run(op, vec1(2.0), cfg), ConfigError);

  // Overflow in the geometric growth factor aborts into a partial trace.
  cfg.algorithm = "linear-cppa";
  cfg.residual_stop = 0.0;
  cfg.budget = 5000;
  cfg.linear = {0.9, 1.0, 0.0};
  t = run(op, vec1(2.0), cfg);
  CHECK(!t.complete);
  CHECK(!t.abort_message.empty());
  CHECK(!t.rows.empty());
}

TEST_CASE("driver records solver bookkeeping columns") {
  auto op = make_rotation();
  SolverRunConfig cfg;
  cfg.algorithm = "contracting-ppa";
  cfg.budget = 5;
  cfg.steps = StepSizes::linear(1.0, 0.0);
  IterateTrace t = run(op, Vec::Ones(2), cfg);
  REQUIRE(t.rows.size() == 6);
  CHECK(t.rows[0].A == doctest::Approx(1.0));
  CHECK(t.rows[1].a == doctest::Approx(1.0));
  CHECK(t.rows[2].a == doctest::Approx(2.0));
  CHECK(t.rows[2].A == doctest::Approx(4.0));  // 1 + 1 + 2
  for (const auto& r : t.rows) CHECK(r.step_defect <= 1e-8);
}
