#include "mprox/metrics.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "mprox/rng.hpp"

namespace mprox {

GapStrategy gap_strategy_from_string(const std::string& s) {
  if (s == "exact-affine") return GapStrategy::ExactAffine;
  if (s == "multistart-ascent") return GapStrategy::MultistartAscent;
  if (s == "grid-1d") return GapStrategy::Grid1d;
  throw ConfigError("unknown gap strategy: " + s);
}

std::string gap_strategy_to_string(GapStrategy s) {
  switch (s) {
    case GapStrategy::ExactAffine: return "exact-affine";
    case GapStrategy::MultistartAscent: return "multistart-ascent";
    case GapStrategy::Grid1d: return "grid-1d";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Exact affine gap via the trust-region subproblem
// ---------------------------------------------------------------------------

AffineGapSolver::AffineGapSolver(const YosidaView& view, Vec anchor, double D)
    : anchor_(std::move(anchor)), D_(D) {
  if (!(D_ > 0.0)) throw ConfigError("gap: ball radius must be positive");
  auto af = view.yosida_affine();
  if (!af) throw ConfigError("exact-affine gap requires an affine operator");
  G_ = af->M;
  t0_ = G_ * anchor_ + af->q;
  const Mat sym = 0.5 * (G_ + G_.transpose());
  Eigen::SelfAdjointEigenSolver<Mat> es(sym);
  Q_ = es.eigenvectors();
  eigs_ = es.eigenvalues().cwiseMax(0.0);  // psd up to round-off
}

double AffineGapSolver::gap(const Vec& x) const {
  // In u = y - anchor the objective is phi(u) = const + c^T u - u^T S u with
  // S = sym(G) psd, const = <x - anchor, t0>, c = G^T (x - anchor) - t0.
  // Concave, so the ball-constrained maximum solves (S + nu I) u = c/2 with
  // nu = 0 (interior) or nu > 0 matching ||u|| = D.
  const Vec d = x - anchor_;
  const double constant = d.dot(t0_);
  const Vec c = G_.transpose() * d - t0_;
  const Vec ch = Q_.transpose() * (0.5 * c);

  auto norm_at = [&](double nu) {
    double s = 0;
    for (Eigen::Index i = 0; i < ch.size(); ++i) {
      const double den = eigs_[i] + nu;
      if (den <= 0.0) {
        if (ch[i] != 0.0) return std::numeric_limits<double>::infinity();
        continue;  // consistent null component, contributes zero
      }
      const double ui = ch[i] / den;
      s += ui * ui;
    }
    return std::sqrt(s);
  };
  auto u_at = [&](double nu) {
    Vec u = Vec::Zero(ch.size());
    for (Eigen::Index i = 0; i < ch.size(); ++i) {
      const double den = eigs_[i] + nu;
      if (den > 0.0) u[i] = ch[i] / den;
    }
    return Vec(Q_ * u);
  };

  // Treat tiny eigenvalue/coefficient magnitudes as exact zeros so the
  // interior test is stable.
  Vec ch_clean = ch;
  const double scale = std::max(1.0, c.norm());
  for (Eigen::Index i = 0; i < ch_clean.size(); ++i)
    if (eigs_[i] < 1e-12 && std::abs(ch_clean[i]) < 1e-12 * scale) ch_clean[i] = 0.0;

  bool interior_consistent = true;
  for (Eigen::Index i = 0; i < ch_clean.size(); ++i)
    if (eigs_[i] < 1e-12 && ch_clean[i] != 0.0) interior_consistent = false;

  Vec u;
  if (interior_consistent) {
    Vec ui = Vec::Zero(ch_clean.size());
    for (Eigen::Index i = 0; i < ch_clean.size(); ++i)
      if (eigs_[i] >= 1e-12) ui[i] = ch_clean[i] / eigs_[i];
    if (ui.norm() <= D_) {
      u = Q_ * ui;
      return constant + c.dot(u) - u.dot(0.5 * (G_ + G_.transpose()) * u) * 1.0;
    }
  }

  // Boundary: bisect nu > 0 with ||u(nu)|| = D.
  double lo = 0.0, hi = 1.0;
  while (norm_at(hi) > D_) hi *= 2.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (norm_at(mid) > D_)
      lo = mid;
    else
      hi = mid;
  }
  u = u_at(hi);
  if (u.norm() > 0) u *= D_ / u.norm();  // land exactly on the boundary
  const Mat S = 0.5 * (G_ + G_.transpose());
  return constant + c.dot(u) - u.dot(S * u);
}

// ---------------------------------------------------------------------------
// Sampling strategies
// ---------------------------------------------------------------------------

namespace {

double objective(const YosidaView& view, const Vec& x, const Vec& y) {
  return (x - y).dot(view.eval(y));
}

Vec project_ball(const Vec& y, const Vec& center, double D) {
  const Vec d = y - center;
  const double n = d.norm();
  if (n <= D) return y;
  return center + (D / n) * d;
}

double gap_multistart(const YosidaView& view, const GapQuery& q, const Vec& x) {
  const int n = view.dim();
  Rng rng(q.seed, /*stream=*/17);
  double best = -std::numeric_limits<double>::infinity();
  const double h = 1e-6 * std::max(1.0, q.D);
  for (int m = 0; m < q.multistarts; ++m) {
    Vec y = (m == 0) ? q.anchor
                     : Vec(q.anchor + q.D * rng.uniform(1000 + m) *
                                          rng.sphere_vec(m, n));
    double fy = objective(view, x, y);
    double step = 0.25 * q.D;
    // Projected ascent with central-difference gradients and backtracking.
    for (int it = 0; it < 200 && step > 1e-10 * q.D; ++it) {
      Vec grad(n);
      for (int i = 0; i < n; ++i) {
        Vec yp = y, ym = y;
        yp[i] += h;
        ym[i] -= h;
        grad[i] = (objective(view, x, yp) - objective(view, x, ym)) / (2 * h);
      }
      const double gn = grad.norm();
      if (gn < 1e-12) break;
      const Vec cand = project_ball(y + (step / gn) * grad, q.anchor, q.D);
      const double fc = objective(view, x, cand);
      if (fc > fy) {
        y = cand;
        fy = fc;
      } else {
        step *= 0.5;
      }
    }
    best = std::max(best, fy);
  }
  return best;
}

double gap_grid_1d(const YosidaView& view, const GapQuery& q, const Vec& x) {
  if (view.dim() != 1) throw ConfigError("grid-1d gap requires dimension 1");
  const double c = q.anchor[0];
  double lo = c - q.D, hi = c + q.D;
  double best = -std::numeric_limits<double>::infinity();
  double best_y = c;
  Vec y(1);
  for (int round = 0; round < 4; ++round) {
    const int pts = (round == 0) ? 2001 : 201;
    const double stepw = (hi - lo) / (pts - 1);
    for (int i = 0; i < pts; ++i) {
      y[0] = lo + stepw * i;
      const double f = objective(view, x, y);
      if (f > best) {
        best = f;
        best_y = y[0];
      }
    }
    lo = std::max(c - q.D, best_y - stepw);
    hi = std::min(c + q.D, best_y + stepw);
  }
  return best;
}

}  // namespace

double gap(const YosidaView& view, const GapQuery& q, const Vec& x) {
  ensure_finite(x, "gap query point");
  switch (q.strategy) {
    case GapStrategy::ExactAffine:
      return AffineGapSolver(view, q.anchor, q.D).gap(x);
    case GapStrategy::MultistartAscent:
      return gap_multistart(view, q, x);
    case GapStrategy::Grid1d:
      return gap_grid_1d(view, q, x);
  }
  throw ConfigError("unreachable");
}

// ---------------------------------------------------------------------------
// Averages, potentials, fits
// ---------------------------------------------------------------------------

Vec ergodic_average(std::span<const Vec> iterates, std::span<const double> weights) {
  if (iterates.empty() || iterates.size() != weights.size())
    throw ConfigError("ergodic_average: length mismatch");
  Vec acc = Vec::Zero(iterates[0].size());
  double wsum = 0;
  for (std::size_t i = 0; i < iterates.size(); ++i) {
    acc += weights[i] * iterates[i];
    wsum += weights[i];
  }
  if (!(wsum > 0)) throw ConfigError("ergodic_average: weights must sum > 0");
  return acc / wsum;
}

double potential_theta(const YosidaView& view, double A_next, const Vec& x_next,
                       const Vec& v_next, const Vec& x) {
  return A_next * (x_next - x).dot(view.eval(x_next)) +
         0.5 * (v_next - x).squaredNorm();
}

double potential_theta_sub(const YosidaView& view, double tau_k, double p,
                           double beta, const Vec& x_next, const Vec& v_next,
                           const Vec& x) {
  return std::pow(1.0 / tau_k, p) * (x_next - x).dot(view.eval(x_next)) +
         0.5 * (v_next - x).squaredNorm() +
         0.5 * beta * (x_next - x).squaredNorm();
}

double potential_theta_lin(const YosidaView& view, double log_rho, double beta,
                           const Vec& x_next, const Vec& v_next, const Vec& x) {
  return std::exp(log_rho) * (x_next - x).dot(view.eval(x_next)) +
         0.5 * (v_next - x).squaredNorm() +
         0.5 * beta * (x_next - x).squaredNorm();
}

RateFit rate_fit(std::span<const double> residuals,
                 std::span<const double> log_normalizers, int burn_in) {
  if (residuals.size() != log_normalizers.size())
    throw ConfigError("rate_fit: length mismatch");
  const std::size_t n = residuals.size();
  if (n < static_cast<std::size_t>(burn_in) + 20)
    throw ConfigError("rate_fit: need at least 20 post-burn-in samples");

  constexpr double kFloor = 1e-300;  // machine floor for underflowed residuals
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  double sup = -std::numeric_limits<double>::infinity();
  std::size_t m = 0;
  for (std::size_t i = burn_in; i < n; ++i) {
    const double r = std::max(residuals[i], kFloor);
    const double lx = log_normalizers[i];
    const double ly = std::log(r);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++m;
    sup = std::max(sup, std::exp(ly + lx));
  }
  RateFit out;
  const double det = m * sxx - sx * sx;
  out.slope = (det != 0.0) ? (m * sxy - sx * sy) / det : 0.0;
  out.sup_normalized = sup;
  return out;
}

double kendall_tau(std::span<const double> values, double rel_tol) {
  const std::size_t n = values.size();
  if (n < 2) return 0.0;
  long long concordant = 0, discordant = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double tie =
          rel_tol * std::max(std::abs(values[i]), std::abs(values[j]));
      if (values[j] > values[i] + tie)
        ++concordant;
      else if (values[j] < values[i] - tie)
        ++discordant;
    }
  const double total = 0.5 * static_cast<double>(n) * static_cast<double>(n - 1);
  return static_cast<double>(concordant - discordant) / total;
}

}  // namespace mprox
