#pragma once

#include <cstdint>

#include "slablb/rational.hpp"

namespace slablb {

// Deterministic, platform-independent generator. Every randomized batch
// derives its stream from (master_seed, stream_index), so trials can be
// evaluated in any order and still reproduce bit-identically. std::
// distributions are implementation-defined, hence the hand-rolled helpers.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed ^ kGolden) {
    // warm up so nearby seeds decorrelate
    next();
    next();
  }

  Rng(std::uint64_t master_seed, std::uint64_t stream_index)
      : Rng(mix(master_seed, stream_index)) {}

  std::uint64_t next() {
    // splitmix64
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // uniform in [0, n); unbiased via rejection
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t v;
    do {
      v = next();
    } while (v >= limit);
    return v % n;
  }

  // uniform integer in [lo, hi] inclusive
  std::int64_t range(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(
                    below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

  // uniform double in [0, 1)
  double uniform() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  bool coin() { return (next() & 1) != 0; }

  // uniform rational from the grid {-K..K}/q
  Rational grid_rational(std::int64_t k, std::int64_t q) {
    return Rational(BigInt(range(-k, k)), BigInt(q));
  }

  // uniform nonzero rational from the grid {-K..K}/q
  Rational grid_rational_nonzero(std::int64_t k, std::int64_t q) {
    Rational r;
    do {
      r = grid_rational(k, q);
    } while (is_zero(r));
    return r;
  }

 private:
  static std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
    std::uint64_t z = a + 0x9e3779b97f4a7c15ULL * (b + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  static constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;
  std::uint64_t state_;
};

}  // namespace slablb
