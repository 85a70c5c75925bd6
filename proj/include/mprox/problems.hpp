#ifndef MPROX_PROBLEMS_HPP
#define MPROX_PROBLEMS_HPP

#include <cstdint>
#include <vector>

#include <nlohmann/json.hpp>

#include "mprox/operator.hpp"

namespace mprox {

// Concrete maximally monotone test operators with closed-form resolvents and
// known zero sets, spanning symmetric, skew and nonsmooth cases.

// T(x) = M x + q with M + M^T >= 0, resolvent by direct linear solve.
OperatorPtr make_affine(const Mat& M, const Vec& q, std::string name = "affine");

// Prox-friendly nonsmooth / smooth operators:
//   abs       — T = subdifferential of ||.||_1 (coordinatewise sign),
//               resolvent = soft-threshold
//   box       — T = normal cone of [lo, hi], resolvent = projection
//   quadratic — T = gradient of (1/2) x^T Q x + b^T x (Q psd)
OperatorPtr make_abs(int dim);
OperatorPtr make_box(const Vec& lo, const Vec& hi);
OperatorPtr make_quadratic(const Mat& Q, const Vec& b);

// Primal-dual KKT operator of the convex-concave quadratic saddle problem
//   min_u max_v (1/2) u^T P u + u^T A v - (1/2) v^T R v + c^T u - d^T v,
// i.e. T(u,v) = (P u + A v + c, -A^T u + R v - (-d)) — affine with a skew
// off-diagonal block. Known saddle point from a direct KKT solve.
OperatorPtr make_saddle(const Mat& P, const Mat& R, const Mat& A, const Vec& c,
                        const Vec& d);

// 90-degree rotation on R^2 (skew, zero set {0}).
OperatorPtr make_rotation();

// Seeded random instances (Gaussian entries, psd parts as B^T B).
OperatorPtr make_random_affine(int dim, std::uint64_t seed, double skew_weight = 1.0);
OperatorPtr make_random_saddle(int m, int n, std::uint64_t seed);

// Serialization to/from the harness config tree.
nlohmann::json problem_to_json(const OperatorPtr& op);
OperatorPtr problem_from_json(const nlohmann::json& spec);

// Standard desk-scale corpora used by invariant suites and acceptance runs.
std::vector<OperatorPtr> corpus();         // mixed: affine, skew, nonsmooth
std::vector<OperatorPtr> affine_corpus();  // affine instances only

}  // namespace mprox

#endif
