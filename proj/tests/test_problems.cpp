#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mprox/problems.hpp"
#include "mprox/rng.hpp"

using namespace mprox;

TEST_CASE("soft-threshold resolvent of the l1 subdifferential") {
  auto op = make_abs(3);
  Vec x(3);
  x << 2.0, -0.3, 0.0;
  const Vec y = op->resolvent(0.5, x);
  CHECK(y[0] == doctest::Approx(1.5));   // shrunk toward zero by lam
  CHECK(y[1] == doctest::Approx(0.0));   // inside the threshold
  CHECK(y[2] == doctest::Approx(0.0));
  REQUIRE(!op->known_zeros().empty());
  CHECK(op->known_zeros().front().norm() == 0.0);
}

TEST_CASE("box normal cone resolvent is the projection") {
  Vec lo = Vec::Constant(2, -1.0), hi = Vec::Constant(2, 2.0);
  auto op = make_box(lo, hi);
  Vec x(2);
  x << 5.0, -3.0;
  const Vec y = op->resolvent(2.0, x);
  CHECK(y[0] == doctest::Approx(2.0));
  CHECK(y[1] == doctest::Approx(-1.0));
  Vec inside(2);
  inside << 0.5, 0.5;
  CHECK((op->resolvent(1.0, inside) - inside).norm() == 0.0);
}

TEST_CASE("affine resolvent solves (I + lam M) y = x - lam q") {
  Mat M(2, 2);
  M << 2.0, -1.0, 1.0, 1.0;  // monotone: sym part psd
  Vec q(2);
  q << 1.0, -2.0;
  auto op = make_affine(M, q);
  const double lam = 0.7;
  Rng rng(5, 0);
  for (int i = 0; i < 10; ++i) {
    const Vec x = rng.gaussian_vec(i, 2);
    const Vec y = op->resolvent(lam, x);
    CHECK(((Mat::Identity(2, 2) + lam * M) * y - (x - lam * q)).norm() <= 1e-12);
  }
  // known zero: M x = -q
  REQUIRE(!op->known_zeros().empty());
  CHECK((M * op->known_zeros().front() + q).norm() <= 1e-10);
}

TEST_CASE("non-monotone affine operators are rejected") {
  Mat M = -Mat::Identity(2, 2);
  CHECK_THROWS_AS(make_affine(M, Vec::Zero(2)), ConfigError);
}

TEST_CASE("rotation operator is skew with zero set {0}") {
  auto op = make_rotation();
  REQUIRE(op->affine().has_value());
  const Mat& M = op->affine()->M;
  CHECK((M + M.transpose()).norm() == 0.0);
  REQUIRE(!op->known_zeros().empty());
  CHECK(op->known_zeros().front().norm() == 0.0);
}

TEST_CASE("saddle operator zero satisfies the stationarity system") {
  auto op = make_random_saddle(3, 4, 21);
  REQUIRE(!op->known_zeros().empty());
  REQUIRE(op->affine().has_value());
  const Vec& z = op->known_zeros().front();
  CHECK((op->affine()->M * z + op->affine()->q).norm() <= 1e-8);
}

TEST_CASE("known zeros are fixed points of every resolvent") {
  for (const auto& op : corpus()) {
    for (const Vec& z : op->known_zeros()) {
      for (double lam : {0.1, 1.0, 10.0}) {
        CHECK((op->resolvent(lam, z) - z).norm() <= 1e-10);
      }
    }
  }
}

TEST_CASE("problem specs round-trip through json") {
  for (const auto& op : corpus()) {
    auto spec = problem_to_json(op);
    auto back = problem_from_json(spec);
    REQUIRE(back->dim() == op->dim());
    CHECK(back->name() == op->name());
    Rng rng(8, 0);
    for (int i = 0; i < 5; ++i) {
      const Vec x = rng.gaussian_vec(i, op->dim());
      CHECK((back->resolvent(1.3, x) - op->resolvent(1.3, x)).norm() == 0.0);
    }
  }
  CHECK_THROWS_AS(problem_from_json(nlohmann::json{{"type", "nope"}}),
                  ConfigError);
}

TEST_CASE("corpora are populated and mixed") {
  const auto ops = corpus();
  CHECK(ops.size() >= 6);
  const auto aff = affine_corpus();
  CHECK(aff.size() == 5);
  for (const auto& op : aff) CHECK(op->affine().has_value());
}
