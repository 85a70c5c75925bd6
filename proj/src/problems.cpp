#include "mprox/problems.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "mprox/rng.hpp"

namespace mprox {

using nlohmann::json;

namespace {

json mat_to_json(const Mat& M) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < M.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < M.cols(); ++j) row.push_back(M(i, j));
    rows.push_back(row);
  }
  return rows;
}

json vec_to_json(const Vec& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

Mat mat_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw ConfigError("expected matrix (array of rows)");
  const auto rows = j.size();
  const auto cols = j[0].size();
  Mat M(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (j[i].size() != cols) throw ConfigError("ragged matrix in problem spec");
    for (std::size_t k = 0; k < cols; ++k) M(i, k) = j[i][k].get<double>();
  }
  return M;
}

Vec vec_from_json(const json& j) {
  if (!j.is_array()) throw ConfigError("expected vector (array)");
  Vec v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) v[i] = j[i].get<double>();
  return v;
}

void check_monotone(const Mat& M, const char* what) {
  const Mat sym = 0.5 * (M + M.transpose());
  Eigen::SelfAdjointEigenSolver<Mat> es(sym, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -kDefaultTol)
    throw ConfigError(std::string(what) + ": M + M^T is not positive semidefinite");
}

OperatorPtr make_affine_with_spec(const Mat& M, const Vec& q, std::string name,
                                  json spec) {
  const int n = static_cast<int>(M.rows());
  if (M.cols() != n || q.size() != n) throw ConfigError("affine: shape mismatch");
  check_monotone(M, "affine");

  auto resolvent = [M, q, n](double lam, const Vec& x) -> Vec {
    const Mat A = Mat::Identity(n, n) + lam * M;
    Eigen::PartialPivLU<Mat> lu(A);
    // I + lam*M is nonsingular for monotone M and lam > 0; a degenerate
    // factorization here means the instance itself is broken.
    const Vec rhs = x - lam * q;
    Vec y = lu.solve(rhs);
    // Backward-error test scaled to the system, so huge resolvent indices
    // (geometric step growth) don't trip it spuriously.
    const double scale = 1.0 + rhs.norm() + A.norm() * y.norm();
    if (!y.allFinite() || !((A * y - rhs).norm() <= 1e-8 * scale))
      throw NumericError("affine resolvent: linear solve failed");
    return y;
  };

  std::vector<Vec> zeros;
  Eigen::FullPivLU<Mat> lu(M);
  if (lu.isInvertible()) zeros.push_back(-lu.solve(q));

  return std::make_shared<MonotoneOperator>(
      n, resolvent, [M, q](const Vec& x) -> Vec { return M * x + q; },
      std::move(zeros), AffineForm{M, q}, std::move(name), spec.dump());
}

}  // namespace

OperatorPtr make_affine(const Mat& M, const Vec& q, std::string name) {
  json spec{{"type", "affine"},
            {"name", name},
            {"M", mat_to_json(M)},
            {"q", vec_to_json(q)}};
  return make_affine_with_spec(M, q, std::move(name), std::move(spec));
}

OperatorPtr make_abs(int dim) {
  if (dim <= 0) throw ConfigError("abs: dimension must be positive");
  auto resolvent = [](double lam, const Vec& x) -> Vec {
    Vec y = x;
    for (Eigen::Index i = 0; i < y.size(); ++i) {
      const double v = y[i];
      y[i] = (v > 0 ? 1.0 : -1.0) * std::max(std::abs(v) - lam, 0.0);
    }
    return y;
  };
  std::vector<Vec> zeros{Vec::Zero(dim)};
  json spec{{"type", "abs"}, {"dim", dim}};
  return std::make_shared<MonotoneOperator>(dim, resolvent, nullptr,
                                            std::move(zeros), std::nullopt,
                                            "abs", spec.dump());
}

OperatorPtr make_box(const Vec& lo, const Vec& hi) {
  const int n = static_cast<int>(lo.size());
  if (hi.size() != n) throw ConfigError("box: bound shape mismatch");
  if (((hi - lo).array() < 0).any()) throw ConfigError("box: requires lo <= hi");
  auto resolvent = [lo, hi](double, const Vec& x) -> Vec {
    return x.cwiseMax(lo).cwiseMin(hi);
  };
  std::vector<Vec> zeros{0.5 * (lo + hi)};  // any interior point is a zero
  json spec{{"type", "box"}, {"lo", vec_to_json(lo)}, {"hi", vec_to_json(hi)}};
  return std::make_shared<MonotoneOperator>(n, resolvent, nullptr,
                                            std::move(zeros), std::nullopt,
                                            "box", spec.dump());
}

OperatorPtr make_quadratic(const Mat& Q, const Vec& b) {
  check_monotone(Q, "quadratic");
  if ((Q - Q.transpose()).cwiseAbs().maxCoeff() > kDefaultTol)
    throw ConfigError("quadratic: Q must be symmetric");
  json spec{{"type", "quadratic"}, {"Q", mat_to_json(Q)}, {"b", vec_to_json(b)}};
  return make_affine_with_spec(Q, b, "quadratic", std::move(spec));
}

OperatorPtr make_saddle(const Mat& P, const Mat& R, const Mat& A, const Vec& c,
                        const Vec& d) {
  const int m = static_cast<int>(P.rows());
  const int n = static_cast<int>(R.rows());
  if (A.rows() != m || A.cols() != n || c.size() != m || d.size() != n)
    throw ConfigError("saddle: block shape mismatch");
  check_monotone(P, "saddle P");
  check_monotone(R, "saddle R");

  Mat M(m + n, m + n);
  M.topLeftCorner(m, m) = P;
  M.topRightCorner(m, n) = A;
  M.bottomLeftCorner(n, m) = -A.transpose();
  M.bottomRightCorner(n, n) = R;
  Vec q(m + n);
  q.head(m) = c;
  q.tail(n) = d;

  Eigen::FullPivLU<Mat> lu(M);
  if (!lu.isInvertible())
    throw ConfigError("saddle: degenerate KKT system, no unique saddle point");

  json spec{{"type", "saddle"},   {"P", mat_to_json(P)}, {"R", mat_to_json(R)},
            {"A", mat_to_json(A)}, {"c", vec_to_json(c)}, {"d", vec_to_json(d)}};
  return make_affine_with_spec(M, q, "saddle", std::move(spec));
}

OperatorPtr make_rotation() {
  Mat M(2, 2);
  M << 0, -1, 1, 0;
  return make_affine(M, Vec::Zero(2), "rotation");
}

OperatorPtr make_random_affine(int dim, std::uint64_t seed, double skew_weight) {
  Rng rng(seed, /*stream=*/11);
  const Mat B = rng.gaussian_mat(0, dim, dim) / std::sqrt(static_cast<double>(dim));
  const Mat K = rng.gaussian_mat(1, dim, dim);
  // Small ridge keeps the symmetric part bounded away from singular, so
  // desk-scale budgets reach the asymptotic regime of the rate certificates.
  Mat M = B.transpose() * B + 0.1 * Mat::Identity(dim, dim) +
          skew_weight * 0.5 * (K - K.transpose());
  Vec q = rng.gaussian_vec(2, dim);
  json spec{{"type", "random-affine"},
            {"dim", dim},
            {"seed", seed},
            {"skew_weight", skew_weight}};
  return make_affine_with_spec(M, q, "random-affine", std::move(spec));
}

OperatorPtr make_random_saddle(int m, int n, std::uint64_t seed) {
  Rng rng(seed, /*stream=*/13);
  const Mat Bp = rng.gaussian_mat(0, m, m) / std::sqrt(static_cast<double>(m));
  const Mat Br = rng.gaussian_mat(1, n, n) / std::sqrt(static_cast<double>(n));
  const Mat P = Bp.transpose() * Bp + 0.1 * Mat::Identity(m, m);
  const Mat R = Br.transpose() * Br + 0.1 * Mat::Identity(n, n);
  const Mat A = rng.gaussian_mat(2, m, n);
  const Vec c = rng.gaussian_vec(3, m);
  const Vec d = rng.gaussian_vec(4, n);
  auto op = make_saddle(P, R, A, c, d);
  json spec{{"type", "random-saddle"}, {"m", m}, {"n", n}, {"seed", seed}};
  return std::make_shared<MonotoneOperator>(
      op->dim(),
      [op](double lam, const Vec& x) { return op->resolvent(lam, x); },
      [op](const Vec& x) { return op->forward(x); }, op->known_zeros(),
      op->affine(), "random-saddle", spec.dump());
}

json problem_to_json(const OperatorPtr& op) {
  if (op->spec_json().empty())
    throw ConfigError("operator has no serializable spec");
  return json::parse(op->spec_json());
}

OperatorPtr problem_from_json(const json& spec) {
  if (!spec.is_object() || !spec.contains("type"))
    throw ConfigError("problem spec: missing type");
  const std::string type = spec.at("type").get<std::string>();
  if (type == "affine")
    return make_affine(mat_from_json(spec.at("M")), vec_from_json(spec.at("q")),
                       spec.value("name", "affine"));
  if (type == "abs") return make_abs(spec.at("dim").get<int>());
  if (type == "box")
    return make_box(vec_from_json(spec.at("lo")), vec_from_json(spec.at("hi")));
  if (type == "quadratic")
    return make_quadratic(mat_from_json(spec.at("Q")), vec_from_json(spec.at("b")));
  if (type == "saddle")
    return make_saddle(mat_from_json(spec.at("P")), mat_from_json(spec.at("R")),
                       mat_from_json(spec.at("A")), vec_from_json(spec.at("c")),
                       vec_from_json(spec.at("d")));
  if (type == "rotation") return make_rotation();
  if (type == "random-affine")
    return make_random_affine(spec.at("dim").get<int>(),
                              spec.at("seed").get<std::uint64_t>(),
                              spec.value("skew_weight", 1.0));
  if (type == "random-saddle")
    return make_random_saddle(spec.at("m").get<int>(), spec.at("n").get<int>(),
                              spec.at("seed").get<std::uint64_t>());
  throw ConfigError("unknown problem type: " + type);
}

std::vector<OperatorPtr> corpus() {
  Mat scalar(1, 1);
  scalar << 1.0;
  return {
      make_affine(scalar, Vec::Zero(1), "scalar-identity"),
      make_rotation(),
      make_random_affine(10, 42),
      make_random_affine(50, 7, /*skew_weight=*/2.0),
      make_abs(5),
      make_box(Vec::Constant(3, -1.0), Vec::Constant(3, 1.0)),
      make_random_saddle(4, 4, 99),
  };
}

std::vector<OperatorPtr> affine_corpus() {
  Mat scalar(1, 1);
  scalar << 1.0;
  return {
      make_affine(scalar, Vec::Zero(1), "scalar-identity"),
      make_rotation(),
      make_random_affine(10, 42),
      make_random_affine(50, 7, /*skew_weight=*/2.0),
      make_random_saddle(4, 4, 99),
  };
}

}  // namespace mprox
