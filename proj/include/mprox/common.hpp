#ifndef MPROX_COMMON_HPP
#define MPROX_COMMON_HPP

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

namespace mprox {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// Invalid user input: bad parameters, malformed configs. Maps to exit code 2.
class ConfigError : public std::runtime_error {
public:
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Numeric failure inside an oracle or a run: singular solve, overflow,
// non-finite iterate. Maps to exit code 3.
class NumericError : public std::runtime_error {
public:
  explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

inline void ensure_finite(const Vec& v, const char* what) {
  if (!v.allFinite())
    throw NumericError(std::string("non-finite value in ") + what);
}

inline void ensure_finite(double v, const char* what) {
  if (!std::isfinite(v))
    throw NumericError(std::string("non-finite value in ") + what);
}

constexpr double kDefaultTol = 1e-9;

}  // namespace mprox

#endif
