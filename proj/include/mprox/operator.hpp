#ifndef MPROX_OPERATOR_HPP
#define MPROX_OPERATOR_HPP

#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "mprox/common.hpp"

namespace mprox {

// Affine representation T(x) = M x + q, kept alongside the resolvent oracle
// when available so downstream code (exact gap, cross-check solves) can work
// with T_lambda symbolically.
struct AffineForm {
  Mat M;
  Vec q;
};

// A maximally monotone operator on R^n, accessed through its resolvent
// J_{lam T} = (I + lam T)^{-1}. Immutable after construction and safe for
// concurrent read-only use.
class MonotoneOperator {
public:
  using ResolventFn = std::function<Vec(double lam, const Vec&)>;
  using ForwardFn = std::function<Vec(const Vec&)>;

  MonotoneOperator(int dim, ResolventFn resolvent, ForwardFn forward,
                   std::vector<Vec> known_zeros,
                   std::optional<AffineForm> affine, std::string name,
                   std::string spec_json = {});

  int dim() const { return dim_; }
  const std::string& name() const { return name_; }

  // Serialized factory spec (harness config subtree); empty for ad-hoc
  // operators that were not built through the problem library.
  const std::string& spec_json() const { return spec_json_; }

  // J_{lam T}(x). Throws ConfigError for lam <= 0 / dimension mismatch,
  // NumericError on oracle failure.
  Vec resolvent(double lam, const Vec& x) const;

  bool has_forward() const { return static_cast<bool>(forward_); }
  Vec forward(const Vec& x) const;

  const std::vector<Vec>& known_zeros() const { return known_zeros_; }
  const std::optional<AffineForm>& affine() const { return affine_; }

private:
  int dim_;
  ResolventFn resolvent_;
  ForwardFn forward_;
  std::vector<Vec> known_zeros_;
  std::optional<AffineForm> affine_;
  std::string name_;
  std::string spec_json_;
};

using OperatorPtr = std::shared_ptr<const MonotoneOperator>;

// Pairing (T, lambda) exposing the Yosida regularization
// T_lambda = (I - J_{lambda T}) / lambda.
class YosidaView {
public:
  YosidaView(OperatorPtr op, double lambda);

  const MonotoneOperator& base() const { return *op_; }
  OperatorPtr base_ptr() const { return op_; }
  double lambda() const { return lambda_; }
  int dim() const { return op_->dim(); }

  // T_lambda(x)
  Vec eval(const Vec& x) const;

  // J_{mu T_lambda}(x) via the composition identity
  //   J_{mu T_lambda} = lambda/(lambda+mu) I + mu/(lambda+mu) J_{(lambda+mu) T},
  // costing exactly one base-resolvent call with index lambda + mu.
  Vec resolvent(double mu, const Vec& x) const;

  // ||T_lambda(x)||
  double residual_norm(const Vec& x) const;

  // Affine form of T_lambda (G, h with T_lambda(y) = G y + h) when the base
  // operator is affine.
  std::optional<AffineForm> yosida_affine() const;

private:
  OperatorPtr op_;
  double lambda_;
};

}  // namespace mprox

#endif
