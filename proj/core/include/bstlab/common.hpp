#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace bstlab {

/// Raised when an input exceeds a documented size guard (exhaustive
/// enumeration, quadratic tables, exponential pattern scans).
class GuardExceeded : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// All logarithms in the library are base 2.
inline double lg(double x) { return std::log2(x); }

inline int ceil_log2(std::int64_t x) {
  int r = 0;
  while ((std::int64_t{1} << r) < x) ++r;
  return r;
}

/// splitmix64 step; used to derive independent per-trial seeds from a
/// master seed.
inline std::uint64_t split_seed(std::uint64_t master, std::uint64_t index) {
  std::uint64_t z = master + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

using Rng = std::mt19937_64;

}  // namespace bstlab
