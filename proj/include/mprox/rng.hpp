#ifndef MPROX_RNG_HPP
#define MPROX_RNG_HPP

#include <cstdint>

#include "mprox/common.hpp"

namespace mprox {

// Counter-based deterministic generator (splitmix64 finalizer). Every draw is
// a pure function of (seed, stream, counter), so substreams can be handed out
// to concurrent consumers without shared state and results are identical
// across platforms.
class Rng {
public:
  Rng(std::uint64_t seed, std::uint64_t stream = 0);

  // Derive an independent substream.
  Rng split(std::uint64_t substream) const;

  double uniform(std::uint64_t ctr) const;          // [0, 1)
  double normal(std::uint64_t ctr) const;           // standard normal
  Vec gaussian_vec(std::uint64_t ctr, int dim) const;
  Vec sphere_vec(std::uint64_t ctr, int dim) const; // uniform on unit sphere
  Mat gaussian_mat(std::uint64_t ctr, int rows, int cols) const;

private:
  std::uint64_t base_;
};

}  // namespace mprox

#endif
