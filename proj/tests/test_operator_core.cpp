#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>

#include "mprox/operator.hpp"
#include "mprox/problems.hpp"
#include "mprox/rng.hpp"

using namespace mprox;

TEST_CASE("rng draws are pure functions of (seed, stream, counter)") {
  Rng a(123, 5), b(123, 5), c(124, 5), d(123, 6);
  CHECK(a.uniform(0) == b.uniform(0));
  CHECK(a.uniform(7) == b.uniform(7));
  CHECK(a.uniform(0) != c.uniform(0));
  CHECK(a.uniform(0) != d.uniform(0));
  CHECK(a.normal(3) == b.normal(3));

  const Vec v1 = a.gaussian_vec(9, 4);
  const Vec v2 = b.gaussian_vec(9, 4);
  CHECK((v1 - v2).norm() == 0.0);

  const Vec s = a.sphere_vec(11, 6);
  CHECK(s.norm() == doctest::Approx(1.0).epsilon(1e-12));

  // split produces a distinct but reproducible stream
  CHECK(a.split(1).uniform(0) == b.split(1).uniform(0));
  CHECK(a.split(1).uniform(0) != a.uniform(0));
}

TEST_CASE("uniform draws land in [0,1) with sane spread") {
  Rng rng(2, 0);
  double lo = 1.0, hi = 0.0, sum = 0.0;
  const int n = 2000;
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform(i);
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    lo = std::min(lo, u);
    hi = std::max(hi, u);
    sum += u;
  }
  CHECK(lo < 0.05);
  CHECK(hi > 0.95);
  CHECK(sum / n == doctest::Approx(0.5).epsilon(0.05));
}

TEST_CASE("yosida evaluation matches its definition") {
  auto op = make_random_affine(8, 3);
  for (double lam : {0.1, 1.0, 10.0}) {
    YosidaView view(op, lam);
    Rng rng(1, 0);
    for (int i = 0; i < 20; ++i) {
      const Vec x = rng.gaussian_vec(i, 8);
      const Vec expect = (x - op->resolvent(lam, x)) / lam;
      CHECK((view.eval(x) - expect).norm() <= 1e-12);
      CHECK(view.residual_norm(x) == doctest::Approx(expect.norm()));
    }
  }
}

TEST_CASE("regularized resolvent equals a direct solve on affine instances") {
  // J_{mu T_lambda}(x) computed through the composition identity must agree
  // with solving (I + mu G) y = x - mu h where T_lambda(y) = G y + h.
  const std::pair<double, double> pairs[] = {{0.5, 1.0}, {1.0, 2.5}, {3.0, 0.2}};
  for (const auto& op : affine_corpus()) {
    const int n = op->dim();
    Rng rng(17, 1);
    for (auto [lam, mu] : pairs) {
      YosidaView view(op, lam);
      const auto aff = view.yosida_affine();
      REQUIRE(aff.has_value());
      const Mat A = Mat::Identity(n, n) + mu * aff->M;
      for (int i = 0; i < 5; ++i) {
        const Vec x = rng.gaussian_vec(100 * i, n);
        const Vec direct = A.lu().solve(x - mu * aff->q);
        CHECK((view.resolvent(mu, x) - direct).norm() <= 1e-10);
      }
    }
  }
}

TEST_CASE("yosida affine form evaluates the regularization") {
  auto op = make_random_affine(6, 9);
  YosidaView view(op, 2.0);
  const auto aff = view.yosida_affine();
  REQUIRE(aff.has_value());
  Rng rng(4, 2);
  for (int i = 0; i < 10; ++i) {
    const Vec x = rng.gaussian_vec(i, 6);
    CHECK((view.eval(x) - (aff->M * x + aff->q)).norm() <= 1e-12);
  }
}

TEST_CASE("argument validation") {
  auto op = make_rotation();
  CHECK_THROWS_AS(op->resolvent(0.0, Vec::Zero(2)), ConfigError);
  CHECK_THROWS_AS(op->resolvent(-1.0, Vec::Zero(2)), ConfigError);
  CHECK_THROWS_AS(op->resolvent(1.0, Vec::Zero(3)), ConfigError);
  CHECK_THROWS_AS(YosidaView(op, 0.0), ConfigError);
  YosidaView view(op, 1.0);
  CHECK_THROWS_AS(view.resolvent(-0.5, Vec::Zero(2)), ConfigError);
  Vec bad = Vec::Zero(2);
  bad[0] = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(view.eval(bad), NumericError);
}

TEST_CASE("resolvents are firmly nonexpansive across the corpus") {
  for (const auto& op : corpus()) {
    Rng rng(33, 0);
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
      const Vec x = 2.0 * rng.gaussian_vec(2 * i, op->dim());
      const Vec y = 2.0 * rng.gaussian_vec(2 * i + 1, op->dim());
      const Vec d = op->resolvent(0.7, x) - op->resolvent(0.7, y);
      worst = std::min(worst, d.dot(x - y) - d.squaredNorm());
    }
    CHECK(worst >= -1e-9);
  }
}
