#ifndef MPROX_BASELINES_HPP
#define MPROX_BASELINES_HPP

#include "mprox/operator.hpp"

namespace mprox {

// Related-work iterations, implemented verbatim from their printed
// recursions. Comparison-only: parameters are validated for the stated
// constraints but not tuned.

// x_{k+1} = J_{a_{k+1} T}(x_k)
Vec classical_ppa_step(const MonotoneOperator& op, const Vec& x_k, double a_next);

// z_{k+1} = z0/(k+2) + (k+1)/(k+2) * J_{T_lambda}(z_k)
Vec halpern_step(const YosidaView& view, const Vec& z0, const Vec& z_k, int k);

struct AcceleratedPpaState {
  Vec x_prev, x_cur;  // x_k, x_{k+1}
  Vec z_prev, z_cur;  // z_{k-1}, z_k
  int k = 0;
};
// x_{k+1} = J_{lambda T}(z_k);
// z_{k+1} = x_{k+1} + k/(k+2) (x_{k+1} - x_k) + k/(k+2) (z_{k-1} - x_k)
AcceleratedPpaState accelerated_ppa_step(const YosidaView& view,
                                         const AcceleratedPpaState& s);
AcceleratedPpaState accelerated_ppa_init(const Vec& x0);

struct RipaParams {
  double s = 1.0;        // > 0
  double epsilon = 0.1;  // > 0
  double alpha = 3.0;    // > 2
  void validate() const;
};
struct RipaState {
  Vec x_prev, x_cur;
  int k = 1;  // the alpha/k term starts at k = 1
};
RipaState ripa_step(const MonotoneOperator& op, const RipaParams& prm,
                    const RipaState& s);

struct PrinaParams {
  double r = 1.0;
  double q = 1.0;
  double lambda = 0.0;  // > (2 beta + s)^2 r^2 / s; 0 means pick it automatically
  double beta = 0.1;
  double s = 1.0;
  void validate() const;
  double lambda_k(int k) const;  // lambda * k^2, guarded at k = 0
};
struct PrinaState {
  Vec x_prev, x_cur;
  int k = 1;
};
PrinaState prina_step(const MonotoneOperator& op, const PrinaParams& prm,
                      const PrinaState& s);

struct CripaParams {
  // The source only requires "appropriate conditions" on these; we accept any
  // positive values.
  double a = 1.0, b = 1.0, c = 1.0, a1 = 1.0, a2 = 1.0;
  double lambda = 1.0;
  void validate() const;
};
struct CripaState {
  Vec x_prev, x_cur, z_prev;
  double kappa_prev = 1.0;  // kappa_{-1} = 1
  int k = 1;
};
CripaState cripa_step(const MonotoneOperator& op, const CripaParams& prm,
                      const CripaState& s);

struct BaselineParams {
  RipaParams ripa;
  PrinaParams prina;
  CripaParams cripa;
  bool halpern_record_composed = false;  // log x_k = J_{T_lambda}(z_k) instead of z_k
};

}  // namespace mprox

#endif
