#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

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

}  // namespace

TEST_CASE("classical step is the plain resolvent") {
  auto op = scalar_identity();
  // J_{2T}(3) solves y + 2y = 3.
  CHECK(classical_ppa_step(*op, vec1(3.0), 2.0)[0] == doctest::Approx(1.0));
}

TEST_CASE("anchored iteration: hand-computed first steps") {
  auto op = scalar_identity();
  YosidaView view(op, 1.0);  // T_lambda(x) = x/2, J_{T_lambda}(z) = 2z/3
  const Vec z0 = vec1(3.0);
  const Vec z1 = halpern_step(view, z0, z0, 0);
  CHECK(z1[0] == doctest::Approx(2.5));  // 3/2 + (1/2)(2)
  const Vec z2 = halpern_step(view, z0, z1, 1);
  CHECK(z2[0] == doctest::Approx(1.0 + (2.0 / 3.0) * (5.0 / 3.0)));
}

TEST_CASE("momentum scheme: hand-computed first steps") {
  auto op = scalar_identity();
  YosidaView view(op, 1.0);  // J_{lam T}(z) = z/2
  AcceleratedPpaState s = accelerated_ppa_init(vec1(4.0));
  s = accelerated_ppa_step(view, s);  // k=0: x1 = 2, z1 = x1 (coefficient 0)
  CHECK(s.x_cur[0] == doctest::Approx(2.0));
  CHECK(s.z_cur[0] == doctest::Approx(2.0));
  s = accelerated_ppa_step(view, s);
  // k=1: x2 = z1/2 = 1; z2 = x2 + (1/3)(x2 - x1) + (1/3)(z0 - x1)
  //                     = 1 + (1/3)(-1) + (1/3)(4 - 2) = 4/3
  CHECK(s.x_cur[0] == doctest::Approx(1.0));
  CHECK(s.z_cur[0] == doctest::Approx(4.0 / 3.0));
}

TEST_CASE("baseline parameter validation") {
  CHECK_THROWS_AS(RipaParams({-1.0, 0.1, 3.0}).validate(), ConfigError);
  CHECK_THROWS_AS(RipaParams({1.0, 0.1, 2.0}).validate(), ConfigError);
  CHECK_NOTHROW(RipaParams({1.0, 0.1, 3.0}).validate());
  // lambda must clear the printed lower bound when given explicitly
  CHECK_THROWS_AS(PrinaParams({1.0, 1.0, 0.5, 0.1, 1.0}).validate(), ConfigError);
  CHECK_NOTHROW(PrinaParams({1.0, 1.0, 0.0, 0.1, 1.0}).validate());
  CHECK_THROWS_AS(CripaParams({0.0, 1.0, 1.0, 1.0, 1.0, 1.0}).validate(),
                  ConfigError);
}

TEST_CASE("all baselines hold their ground at a zero") {
  for (const char* alg : {"classical-ppa", "halpern", "accelerated-ppa", "ripa",
                          "prina", "cripa"}) {
    for (const auto& op : corpus()) {
      if (op->known_zeros().empty()) continue;
      const Vec z = op->known_zeros().front();
      SolverRunConfig cfg;
      cfg.algorithm = alg;
      cfg.budget = 10;
      IterateTrace t = run(op, z, cfg);
      REQUIRE(t.complete);
      for (const auto& r : t.rows) CHECK((r.x - z).norm() <= 1e-9);
    }
  }
}

TEST_CASE("all baselines drive the residual down on the scalar problem") {
  auto op = scalar_identity();
  for (const char* alg : {"classical-ppa", "halpern", "accelerated-ppa", "ripa",
                          "prina", "cripa"}) {
    SolverRunConfig cfg;
    cfg.algorithm = alg;
    cfg.budget = 300;
    IterateTrace t = run(op, vec1(5.0), cfg);
    REQUIRE(t.complete);
    // prina's guarantee is stated for a growing regularization index; under
    // the fixed-index residual used here it converges, just slowly.
    const double factor = std::string(alg) == "prina" ? 0.3 : 0.05;
    CHECK(t.rows.back().residual <= factor * t.rows.front().residual);
  }
}

TEST_CASE("anchored iteration can log the composed iterate") {
  auto op = scalar_identity();
  SolverRunConfig cfg;
  cfg.algorithm = "halpern";
  cfg.budget = 20;
  IterateTrace plain = run(op, vec1(3.0), cfg);
  cfg.baseline.halpern_record_composed = true;
  IterateTrace composed = run(op, vec1(3.0), cfg);
  YosidaView view(op, 1.0);
  for (std::size_t i = 0; i < plain.rows.size(); ++i) {
    CHECK((view.resolvent(1.0, plain.rows[i].x) - composed.rows[i].x).norm() <=
          1e-12);
  }
}
