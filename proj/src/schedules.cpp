#include "mprox/schedules.hpp"

#include <cmath>
#include <limits>

namespace mprox {

using nlohmann::json;

ErrorSchedule::ErrorSchedule(Family f, double c, double rho, std::uint64_t seed)
    : family_(f), c_(c), rho_(rho), rng_(seed, /*stream=*/3) {
  if (c_ < 0.0) throw ConfigError("error schedule: c must be nonnegative");
  if (family_ == Family::Geometric && !(rho_ >= 0.0 && rho_ < 1.0))
    throw ConfigError("error schedule: geometric requires 0 <= rho < 1");
}

ErrorSchedule ErrorSchedule::zero() { return {Family::Zero, 0.0, 0.0, 0}; }

ErrorSchedule ErrorSchedule::geometric(double c, double rho, std::uint64_t seed) {
  return {Family::Geometric, c, rho, seed};
}

ErrorSchedule ErrorSchedule::polynomial(double c, std::uint64_t seed) {
  return {Family::Polynomial, c, 0.0, seed};
}

ErrorSchedule ErrorSchedule::from_json(const json& j, std::uint64_t seed) {
  const std::string family = j.value("family", "zero");
  if (family == "zero") return zero();
  if (family == "geometric")
    return geometric(j.value("c", 0.1), j.value("rho", 0.9), seed);
  if (family == "polynomial") return polynomial(j.value("c", 0.1), seed);
  throw ConfigError("unknown error-schedule family: " + family);
}

json ErrorSchedule::to_json() const {
  switch (family_) {
    case Family::Zero:
      return {{"family", "zero"}};
    case Family::Geometric:
      return {{"family", "geometric"}, {"c", c_}, {"rho", rho_}};
    case Family::Polynomial:
      return {{"family", "polynomial"}, {"c", c_}};
  }
  throw ConfigError("unreachable");
}

double ErrorSchedule::delta(int k) const {
  switch (family_) {
    case Family::Zero:
      return 0.0;
    case Family::Geometric:
      return c_ * std::pow(rho_, k);
    case Family::Polynomial:
      return c_ / (static_cast<double>(k + 1) * static_cast<double>(k + 1));
  }
  return 0.0;
}

double ErrorSchedule::delta_sum() const {
  switch (family_) {
    case Family::Zero:
      return 0.0;
    case Family::Geometric:
      return c_ / (1.0 - rho_);
    case Family::Polynomial:
      return c_ * M_PI * M_PI / 6.0;
  }
  return 0.0;
}

Vec ErrorSchedule::g(int k, int dim) const {
  const double d = delta(k);
  if (d == 0.0) return Vec::Zero(dim);
  return d * rng_.sphere_vec(static_cast<std::uint64_t>(k), dim);
}

StepSizes::StepSizes(Kind kind, double slope, double offset,
                     std::vector<double> values)
    : kind_(kind), slope_(slope), offset_(offset), values_(std::move(values)) {
  switch (kind_) {
    case Kind::Constant:
      if (!(offset_ > 0.0)) throw ConfigError("step sizes must be positive");
      eps_ = offset_;
      break;
    case Kind::Linear:
      if (slope_ < 0.0 || !(slope_ + offset_ > 0.0))
        throw ConfigError("linear step sizes must stay positive");
      eps_ = slope_ + offset_;  // value at k = 0, nondecreasing afterwards
      break;
    case Kind::List: {
      if (values_.empty()) throw ConfigError("step-size list must be nonempty");
      eps_ = std::numeric_limits<double>::infinity();
      for (double v : values_) {
        if (!(v > 0.0)) throw ConfigError("step sizes must be positive");
        eps_ = std::min(eps_, v);
      }
      break;
    }
  }
}

StepSizes StepSizes::constant(double value) {
  return {Kind::Constant, 0.0, value, {}};
}

StepSizes StepSizes::linear(double slope, double offset) {
  return {Kind::Linear, slope, offset, {}};
}

StepSizes StepSizes::list(std::vector<double> values) {
  return {Kind::List, 0.0, 0.0, std::move(values)};
}

StepSizes StepSizes::from_json(const json& j) {
  const std::string type = j.value("type", "constant");
  if (type == "constant") return constant(j.value("value", 1.0));
  if (type == "linear")
    return linear(j.value("slope", 1.0), j.value("offset", 0.0));
  if (type == "list") return list(j.at("values").get<std::vector<double>>());
  throw ConfigError("unknown step-size rule: " + type);
}

json StepSizes::to_json() const {
  switch (kind_) {
    case Kind::Constant:
      return {{"type", "constant"}, {"value", offset_}};
    case Kind::Linear:
      return {{"type", "linear"}, {"slope", slope_}, {"offset", offset_}};
    case Kind::List:
      return {{"type", "list"}, {"values", values_}};
  }
  throw ConfigError("unreachable");
}

double StepSizes::at(int k) const {
  switch (kind_) {
    case Kind::Constant:
      return offset_;
    case Kind::Linear:
      return slope_ * static_cast<double>(k + 1) + offset_;
    case Kind::List:
      return values_[std::min<std::size_t>(k, values_.size() - 1)];
  }
  return offset_;
}

}  // namespace mprox
