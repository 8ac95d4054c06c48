#include "swloc/random.hpp"

#include <cmath>

namespace swloc {

std::uint64_t Rng::poisson(double mean) {
  if (!(mean > 0.0)) return 0;
  constexpr double kChunk = 30.0;
  std::uint64_t total = 0;
  while (mean > 0.0) {
    const double part = mean > kChunk ? kChunk : mean;
    mean -= part;
    // Knuth's product-of-uniforms method; exact for small means.
    const double limit = std::exp(-part);
    double product = uniform01();
    std::uint64_t count = 0;
    while (product > limit) {
      ++count;
      product *= uniform01();
    }
    total += count;
  }
  return total;
}

}  // namespace swloc
