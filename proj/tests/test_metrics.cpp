#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "mprox/metrics.hpp"
#include "mprox/problems.hpp"
#include "mprox/rng.hpp"

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

}  // namespace

TEST_CASE("restricted gap: hand-solved scalar values") {
  auto op = scalar_identity();
  YosidaView view(op, 1.0);  // T_lambda(y) = y/2
  GapQuery q;
  q.anchor = vec1(0.0);
  q.D = 1.0;

  // Gap(x) = max_{|y|<=1} (x - y) y / 2; zero at the solution x = 0 and
  // (1 - 1/2) * (1/2) / 2 = 1/8 at x = 1 (maximum at y = 1/2, interior).
  for (auto strat :
       {GapStrategy::ExactAffine, GapStrategy::MultistartAscent, GapStrategy::Grid1d}) {
    q.strategy = strat;
    CHECK(gap(view, q, vec1(0.0)) == doctest::Approx(0.0).epsilon(1e-8));
    CHECK(gap(view, q, vec1(1.0)) == doctest::Approx(0.125).epsilon(1e-5));
  }

  // Boundary-constrained case: x far outside, maximizer pinned to y = 1.
  q.strategy = GapStrategy::ExactAffine;
  CHECK(gap(view, q, vec1(10.0)) == doctest::Approx((10.0 - 1.0) * 0.5));
}

TEST_CASE("sampling strategies are sound lower bounds for the exact value") {
  for (const auto& op : affine_corpus()) {
    YosidaView view(op, 1.0);
    GapQuery q;
    q.anchor = Vec::Zero(op->dim());
    q.D = 2.0;
    q.multistarts = 6;
    AffineGapSolver exact(view, q.anchor, q.D);
    Rng rng(12, 0);
    for (int i = 0; i < 4; ++i) {
      const Vec x = rng.gaussian_vec(i, op->dim());
      const double ex = exact.gap(x);
      q.strategy = GapStrategy::MultistartAscent;
      const double lb = gap(view, q, x);
      CHECK(lb <= ex + 1e-6);
      if (op->dim() == 1) {
        q.strategy = GapStrategy::Grid1d;
        const double gb = gap(view, q, x);
        CHECK(gb <= ex + 1e-6);
        CHECK(ex <= gb + 1e-6);  // fine grid pins the scalar optimum
      }
    }
  }
}

TEST_CASE("exact gap requires an affine operator; grid requires dimension 1") {
  auto op = make_abs(2);
  YosidaView view(op, 1.0);
  GapQuery q;
  q.anchor = Vec::Zero(2);
  q.D = 1.0;
  q.strategy = GapStrategy::ExactAffine;
  CHECK_THROWS_AS(gap(view, q, Vec::Zero(2)), ConfigError);
  q.strategy = GapStrategy::Grid1d;
  CHECK_THROWS_AS(gap(view, q, Vec::Zero(2)), ConfigError);
}

TEST_CASE("weighted ergodic average") {
  std::vector<Vec> xs = {vec1(0.0), vec1(2.0)};
  std::vector<double> ws = {1.0, 3.0};
  CHECK(ergodic_average(xs, ws)[0] == doctest::Approx(1.5));
  std::vector<double> bad = {1.0};
  CHECK_THROWS_AS(ergodic_average(xs, bad), ConfigError);
}

TEST_CASE("rate fit on synthetic traces") {
  std::vector<double> res, logn;
  for (int k = 1; k <= 200; ++k) {
    res.push_back(1.0 / k);
    logn.push_back(std::log(static_cast<double>(k)));
  }
  RateFit fit = rate_fit(res, logn, 10);
  CHECK(fit.slope == doctest::Approx(-1.0).epsilon(0.05));
  CHECK(fit.sup_normalized == doctest::Approx(1.0).epsilon(1e-9));

  res.clear();
  logn.clear();
  for (int k = 0; k < 100; ++k) {
    res.push_back(std::pow(0.5, k));
    logn.push_back(k * std::log(2.0));  // geometric normalizer 2^k
  }
  fit = rate_fit(res, logn, 10);
  CHECK(fit.sup_normalized == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(fit.slope == doctest::Approx(-1.0).epsilon(1e-6));

  std::vector<double> tiny(12, 0.1);
  CHECK_THROWS_AS(rate_fit(tiny, tiny, 10), ConfigError);
}

TEST_CASE("rank trend statistic") {
  std::vector<double> up = {1, 2, 3, 4, 5};
  std::vector<double> down = {5, 4, 3, 2, 1};
  std::vector<double> flat = {1, 1, 1, 1};
  CHECK(kendall_tau(up) == doctest::Approx(1.0));
  CHECK(kendall_tau(down) == doctest::Approx(-1.0));
  CHECK(kendall_tau(flat) == doctest::Approx(0.0));
  // wobble below the tie tolerance does not register
  std::vector<double> wobble = {1.0, 1.0 + 1e-12, 1.0 - 1e-12, 1.0};
  CHECK(kendall_tau(wobble, 1e-9) == doctest::Approx(0.0));
}

TEST_CASE("potential functions at a zero decrease along exact runs") {
  auto op = make_random_affine(6, 5);
  YosidaView view(op, 1.0);
  const Vec xs = op->known_zeros().front();
  // potential value at the solution point itself is the squared v-distance
  const double th = potential_theta(view, 2.0, xs, xs + vec1(1.0).replicate(6, 1), xs);
  CHECK(th == doctest::Approx(0.5 * 6.0));
}
