#ifndef MPROX_SCHEDULES_HPP
#define MPROX_SCHEDULES_HPP

#include <cstdint>
#include <vector>

#include <nlohmann/json.hpp>

#include "mprox/common.hpp"
#include "mprox/rng.hpp"

namespace mprox {

// Summable inexactness schedule: per-step bounds delta_k with a seeded
// direction rule emitting g_k with ||g_k|| = delta_k exactly (worst case).
// Supported families have closed-form sums, so summability is certified at
// construction.
class ErrorSchedule {
public:
  enum class Family { Zero, Geometric, Polynomial };

  static ErrorSchedule zero();
  // delta_k = c * rho^k, 0 <= rho < 1
  static ErrorSchedule geometric(double c, double rho, std::uint64_t seed);
  // delta_k = c / (k+1)^2
  static ErrorSchedule polynomial(double c, std::uint64_t seed);

  static ErrorSchedule from_json(const nlohmann::json& j, std::uint64_t seed);
  nlohmann::json to_json() const;

  double delta(int k) const;
  double delta_sum() const;  // closed-form value of sum_k delta_k
  Vec g(int k, int dim) const;
  bool is_zero() const { return family_ == Family::Zero; }

private:
  ErrorSchedule(Family f, double c, double rho, std::uint64_t seed);

  Family family_;
  double c_ = 0.0;
  double rho_ = 0.0;
  Rng rng_;
};

// Step-size rule producing a_{k+1} >= eps > 0. at(k) is the index used for
// the step from x_k to x_{k+1}, k = 0, 1, ...
class StepSizes {
public:
  static StepSizes constant(double value);
  // a_{k+1} = slope * (k+1) + offset
  static StepSizes linear(double slope, double offset);
  static StepSizes list(std::vector<double> values);

  static StepSizes from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;

  double at(int k) const;
  double epsilon() const { return eps_; }

private:
  enum class Kind { Constant, Linear, List };
  StepSizes(Kind kind, double slope, double offset, std::vector<double> values);

  Kind kind_;
  double slope_ = 0.0;
  double offset_ = 0.0;
  std::vector<double> values_;
  double eps_ = 0.0;
};

}  // namespace mprox

#endif
