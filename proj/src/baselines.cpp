#include "mprox/baselines.hpp"

namespace mprox {

Vec classical_ppa_step(const MonotoneOperator& op, const Vec& x_k, double a_next) {
  if (!(a_next > 0.0)) throw ConfigError("step size must be positive");
  return op.resolvent(a_next, x_k);
}

Vec halpern_step(const YosidaView& view, const Vec& z0, const Vec& z_k, int k) {
  const double t = 1.0 / static_cast<double>(k + 2);
  return t * z0 + (1.0 - t) * view.resolvent(1.0, z_k);
}

AcceleratedPpaState accelerated_ppa_init(const Vec& x0) {
  AcceleratedPpaState s;
  s.x_prev = x0;
  s.x_cur = x0;
  s.z_prev = x0;  // z_{-1}; its coefficient vanishes at k = 0
  s.z_cur = x0;
  s.k = 0;
  return s;
}

AcceleratedPpaState accelerated_ppa_step(const YosidaView& view,
                                         const AcceleratedPpaState& s) {
  const double k = static_cast<double>(s.k);
  const double c = k / (k + 2.0);
  Vec x_next = view.base().resolvent(view.lambda(), s.z_cur);
  Vec z_next = x_next + c * (x_next - s.x_cur) + c * (s.z_prev - s.x_cur);

  AcceleratedPpaState out;
  out.x_prev = s.x_cur;
  out.x_cur = std::move(x_next);
  out.z_prev = s.z_cur;
  out.z_cur = std::move(z_next);
  out.k = s.k + 1;
  return out;
}

void RipaParams::validate() const {
  if (!(s > 0.0)) throw ConfigError("ripa: s must be positive");
  if (!(epsilon > 0.0)) throw ConfigError("ripa: epsilon must be positive");
  if (!(alpha > 2.0)) throw ConfigError("ripa: alpha must exceed 2");
}

RipaState ripa_step(const MonotoneOperator& op, const RipaParams& prm,
                    const RipaState& st) {
  const double k = static_cast<double>(st.k);
  const double lam_k = (1.0 + prm.epsilon) * prm.s / (prm.alpha * prm.alpha) * k * k;
  const Vec z = st.x_cur + (1.0 - prm.alpha / k) * (st.x_cur - st.x_prev);
  const double idx = lam_k + prm.s;
  Vec x_next = (lam_k / idx) * z + (prm.s / idx) * op.resolvent(idx, z);
  ensure_finite(x_next, "ripa step");
  return {st.x_cur, std::move(x_next), st.k + 1};
}

void PrinaParams::validate() const {
  if (!(r > 0.0)) throw ConfigError("prina: r must be positive");
  if (!(s > 0.0)) throw ConfigError("prina: s must be positive");
  if (!(beta >= 0.0)) throw ConfigError("prina: beta must be >= 0");
  const double lo = (2.0 * beta + s) * (2.0 * beta + s) * r * r / s;
  if (lambda != 0.0 && !(lambda > lo))
    throw ConfigError("prina: lambda must exceed (2 beta + s)^2 r^2 / s");
}

double PrinaParams::lambda_k(int k) const {
  const double lo = (2.0 * beta + s) * (2.0 * beta + s) * r * r / s;
  const double lam = (lambda != 0.0) ? lambda : 2.0 * lo + 1.0;
  // k = 0 would give lambda_0 = 0 and a division by zero in the update;
  // the recursion starts at k = 1, and the k-1 = 0 reference is guarded by
  // reusing the k = 1 value.
  const double kk = std::max(1.0, static_cast<double>(k));
  return lam * kk * kk;
}

PrinaState prina_step(const MonotoneOperator& op, const PrinaParams& prm,
                      const PrinaState& st) {
  const int k = st.k;
  const double lam_k = prm.lambda_k(k);
  const double lam_km1 = prm.lambda_k(k - 1);
  const double lam_kp1 = prm.lambda_k(k + 1);
  const double alpha_k = (prm.r * k + prm.q - 1.0) / (prm.r * (k + 1.0) + prm.q);

  const Vec jk = op.resolvent(lam_k, st.x_cur);
  const Vec jkm1 = op.resolvent(lam_km1, st.x_prev);
  const Vec z = (1.0 - prm.beta * (1.0 / lam_k - 1.0 / lam_km1)) * st.x_cur +
                (alpha_k - prm.beta / lam_km1) * (st.x_cur - st.x_prev) +
                prm.beta * (jk / lam_k - jkm1 / lam_km1);
  const double idx = lam_kp1 + prm.s;
  Vec x_next = (lam_kp1 / idx) * z + (prm.s / idx) * op.resolvent(idx, z);
  ensure_finite(x_next, "prina step");
  return {st.x_cur, std::move(x_next), k + 1};
}

void CripaParams::validate() const {
  if (!(a > 0.0 && b > 0.0 && c > 0.0 && a1 > 0.0 && a2 > 0.0))
    throw ConfigError("cripa: parameters must be positive");
  if (!(lambda > 0.0)) throw ConfigError("cripa: lambda must be positive");
}

CripaState cripa_step(const MonotoneOperator& op, const CripaParams& prm,
                      const CripaState& st) {
  const double k = static_cast<double>(st.k);
  const double denom = prm.b * k + prm.c;
  const double kappa = st.kappa_prev * (1.0 + prm.a / denom);
  const double theta = 1.0 - prm.a1 / denom;
  const double gamma = 1.0 - prm.a2 / denom;

  const Vec z = st.x_cur + theta * (st.x_cur - st.x_prev) +
                gamma * (st.z_prev - st.x_cur);
  Vec x_next = z / (1.0 + kappa) +
               (kappa / (1.0 + kappa)) * op.resolvent(prm.lambda * (1.0 + kappa), z);
  ensure_finite(x_next, "cripa step");

  CripaState out;
  out.x_prev = st.x_cur;
  out.x_cur = std::move(x_next);
  out.z_prev = z;
  out.kappa_prev = kappa;
  out.k = st.k + 1;
  return out;
}

}  // namespace mprox
