#include "mprox/operator.hpp"

#include <utility>

namespace mprox {

MonotoneOperator::MonotoneOperator(int dim, ResolventFn resolvent,
                                   ForwardFn forward,
                                   std::vector<Vec> known_zeros,
                                   std::optional<AffineForm> affine,
                                   std::string name, std::string spec_json)
    : dim_(dim),
      resolvent_(std::move(resolvent)),
      forward_(std::move(forward)),
      known_zeros_(std::move(known_zeros)),
      affine_(std::move(affine)),
      name_(std::move(name)),
      spec_json_(std::move(spec_json)) {
  if (dim_ <= 0) throw ConfigError("operator dimension must be positive");
  if (!resolvent_) throw ConfigError("operator requires a resolvent oracle");
}

Vec MonotoneOperator::resolvent(double lam, const Vec& x) const {
  if (!(lam > 0.0)) throw ConfigError("resolvent index must be positive");
  if (x.size() != dim_) throw ConfigError("resolvent: dimension mismatch");
  ensure_finite(x, "resolvent input");
  Vec y = resolvent_(lam, x);
  ensure_finite(y, "resolvent output");
  return y;
}

Vec MonotoneOperator::forward(const Vec& x) const {
  if (!forward_) throw ConfigError("operator has no forward oracle");
  if (x.size() != dim_) throw ConfigError("forward: dimension mismatch");
  ensure_finite(x, "forward input");
  return forward_(x);
}

YosidaView::YosidaView(OperatorPtr op, double lambda)
    : op_(std::move(op)), lambda_(lambda) {
  if (!op_) throw ConfigError("YosidaView requires an operator");
  if (!(lambda_ > 0.0)) throw ConfigError("lambda must be positive");
}

Vec YosidaView::eval(const Vec& x) const {
  return (x - op_->resolvent(lambda_, x)) / lambda_;
}

Vec YosidaView::resolvent(double mu, const Vec& x) const {
  if (!(mu > 0.0)) throw ConfigError("resolvent index must be positive");
  const double s = lambda_ + mu;
  return (lambda_ / s) * x + (mu / s) * op_->resolvent(s, x);
}

double YosidaView::residual_norm(const Vec& x) const { return eval(x).norm(); }

std::optional<AffineForm> YosidaView::yosida_affine() const {
  if (!op_->affine()) return std::nullopt;
  const AffineForm& af = *op_->affine();
  const int n = op_->dim();
  // J_{lam T}(y) = (I + lam M)^{-1}(y - lam q) = S y - lam S q
  Mat S = (Mat::Identity(n, n) + lambda_ * af.M)
              .partialPivLu()
              .solve(Mat::Identity(n, n));
  AffineForm out;
  out.M = (Mat::Identity(n, n) - S) / lambda_;  // G
  out.q = S * af.q;                             // h
  return out;
}

}  // namespace mprox
