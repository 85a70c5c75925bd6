#ifndef MPROX_METRICS_HPP
#define MPROX_METRICS_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "mprox/operator.hpp"
#include "mprox/trace.hpp"

namespace mprox {

// Restricted gap: Gap(x) = max over the ball B(anchor, D) of <x - y, T_lambda(y)>.
// Strategy ladder: exact where the math permits, certified lower bound
// elsewhere.
enum class GapStrategy { ExactAffine, MultistartAscent, Grid1d };

GapStrategy gap_strategy_from_string(const std::string& s);
std::string gap_strategy_to_string(GapStrategy s);

struct GapQuery {
  Vec anchor;      // x0 entering both the metric and the ball
  double D = 1.0;  // ball radius
  GapStrategy strategy = GapStrategy::ExactAffine;
  int multistarts = 8;
  std::uint64_t seed = 0;
};

// Evaluates Gap at x. ExactAffine requires an affine base operator and solves
// the concave quadratic ball-constrained maximization exactly; the other
// strategies report the best evaluated feasible value, hence a valid lower
// bound.
double gap(const YosidaView& view, const GapQuery& query, const Vec& x);

// Reusable exact-affine evaluator: one eigendecomposition, O(n^2) per query.
class AffineGapSolver {
public:
  AffineGapSolver(const YosidaView& view, Vec anchor, double D);
  double gap(const Vec& x) const;

private:
  Vec anchor_;
  double D_;
  Mat G_;       // T_lambda(y) = G y + h
  Vec t0_;      // G anchor + h
  Mat Q_;       // eigenvectors of sym(G)
  Vec eigs_;    // eigenvalues of sym(G), >= 0
};

// Weighted ergodic average (sum a_{i+1} x_{i+1}) / (sum a_{i+1}) over the
// post-initial iterates x_1..x_{k+1}.
Vec ergodic_average(std::span<const Vec> iterates, std::span<const double> weights);

// Potential functions of the contracting family, evaluated from trace data
// and fresh oracle calls.
//   theta:      A_{k+1} <x_{k+1}-x, T(x_{k+1})> + 1/2 ||v_{k+1}-x||^2
//   theta_sub:  adds beta/2 ||x_{k+1}-x||^2, weight (1/tau_k)^p
//   theta_lin:  weight (1-eta tau)^{-(k+1)} supplied as log_rho
double potential_theta(const YosidaView& view, double A_next, const Vec& x_next,
                       const Vec& v_next, const Vec& x);
double potential_theta_sub(const YosidaView& view, double tau_k, double p,
                           double beta, const Vec& x_next, const Vec& v_next,
                           const Vec& x);
double potential_theta_lin(const YosidaView& view, double log_rho, double beta,
                           const Vec& x_next, const Vec& v_next, const Vec& x);

// Rate certificate: least-squares slope of log residual vs log normalizer and
// the sup of residual * normalizer (the quantity each scheme guarantees bounded).
// Normalizers are passed in log-space so geometric families stay
// representable. The first `burn_in` entries are excluded.
struct RateFit {
  double slope = 0;
  double sup_normalized = 0;
};
RateFit rate_fit(std::span<const double> residuals,
                 std::span<const double> log_normalizers, int burn_in = 10);

// Kendall rank correlation of a sequence against its index; <= 0 means no
// upward trend. Pairs within rel_tol (relative to the larger magnitude) count
// as ties so floating-point wobble on plateaus does not register as a trend.
double kendall_tau(std::span<const double> values, double rel_tol = 0.0);

}  // namespace mprox

#endif
