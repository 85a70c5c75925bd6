#include "mprox/rng.hpp"

#include <cmath>

namespace mprox {
namespace {

constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;

std::uint64_t mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

Rng::Rng(std::uint64_t seed, std::uint64_t stream)
    : base_(mix(mix(seed + kGamma) ^ mix(stream * kGamma + 1))) {}

Rng Rng::split(std::uint64_t substream) const {
  Rng r(0);
  r.base_ = mix(base_ ^ mix(substream * kGamma + 0x632be59bd9b4e019ULL));
  return r;
}

double Rng::uniform(std::uint64_t ctr) const {
  const std::uint64_t bits = mix(base_ + ctr * kGamma);
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

double Rng::normal(std::uint64_t ctr) const {
  // Box-Muller on two counter draws; avoids log(0) by offsetting u1.
  const double u1 = uniform(2 * ctr);
  const double u2 = uniform(2 * ctr + 1);
  const double r = std::sqrt(-2.0 * std::log1p(-u1));
  return r * std::cos(2.0 * M_PI * u2);
}

Vec Rng::gaussian_vec(std::uint64_t ctr, int dim) const {
  Vec v(dim);
  for (int i = 0; i < dim; ++i)
    v[i] = normal(ctr * static_cast<std::uint64_t>(dim) + static_cast<std::uint64_t>(i));
  return v;
}

Vec Rng::sphere_vec(std::uint64_t ctr, int dim) const {
  Vec v = gaussian_vec(ctr, dim);
  double n = v.norm();
  std::uint64_t bump = 1;
  while (n < 1e-12) {  // astronomically rare, but keep it total
    v = split(0xdeadULL + bump).gaussian_vec(ctr, dim);
    n = v.norm();
    ++bump;
  }
  return v / n;
}

Mat Rng::gaussian_mat(std::uint64_t ctr, int rows, int cols) const {
  Mat m(rows, cols);
  std::uint64_t c = ctr * static_cast<std::uint64_t>(rows) * static_cast<std::uint64_t>(cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = normal(c++);
  return m;
}

}  // namespace mprox
