#pragma once

#include <qid/rational.hpp>

#include <cstdint>
#include <string_view>

namespace qid {

/// splitmix64 output function. Pure integer mixing, identical on every
/// platform, which is what makes trial reports reproducible bit-for-bit.
inline std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Inclusive bounds for random rationals: numerator in [num_lo, num_hi],
/// denominator in [den_lo, den_hi] with den_lo >= 1.
struct RangeSpec {
  long long num_lo = -30;
  long long num_hi = 30;
  long long den_lo = 1;
  long long den_hi = 8;
};

/// Counter-based generator: draw i is a pure function of (seed, i), so a
/// sampler can be replayed or split without shared state.
class SeededSampler {
 public:
  explicit SeededSampler(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t next_u64() { return splitmix64(seed_ + 0x9E3779B97F4A7C15ULL * ++counter_); }

  std::uint64_t next_below(std::uint64_t bound) { return bound ? next_u64() % bound : 0; }

  long long next_in(long long lo, long long hi) {
    if (hi < lo) throw std::invalid_argument("empty sampling range");
    return lo + static_cast<long long>(
                    next_below(static_cast<std::uint64_t>(hi - lo) + 1));
  }

  Rational sample(const RangeSpec& r) {
    if (r.den_lo < 1) throw std::invalid_argument("denominator bound must be >= 1");
    const long long num = next_in(r.num_lo, r.num_hi);
    const long long den = next_in(r.den_lo, r.den_hi);
    return Rational(num, den);
  }

  Rational sample_nonzero(const RangeSpec& r) {
    for (int tries = 0; tries < 1000; ++tries) {
      Rational v = sample(r);
      if (!v.is_zero()) return v;
    }
    throw Error(errc::sample_exhausted, "range contains only zero");
  }

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t position() const noexcept { return counter_; }

 private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
};

/// Per-cell seed: base XOR a stable hash of (identity, n, trial). Cells are
/// independent, so suites can run in any order with identical draws.
inline std::uint64_t derive_seed(std::uint64_t base, std::string_view identity, int n,
                                 int trial) {
  std::uint64_t h = 1469598103934665603ULL;  // FNV-1a over the identity name
  for (unsigned char ch : identity) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  h = splitmix64(h + static_cast<std::uint64_t>(n));
  h = splitmix64(h + static_cast<std::uint64_t>(trial));
  return base ^ h;
}

}  // namespace qid
