#pragma once

#include <cstdint>
#include <random>

namespace pentachain {

/// Seeded 64-bit random stream.
///
/// Streams are derived from a (master seed, stream index) pair through
/// std::seed_seq, whose mixing algorithm is fixed by the standard, feeding a
/// std::mt19937_64. Both pieces are fully specified, so a given pair yields the
/// same sequence on every conforming standard library. Uniform doubles are
/// built from the top 53 bits directly instead of going through
/// std::uniform_real_distribution, whose algorithm is implementation-defined.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : RandomStream(seed, 0) {}

  /// Independent stream number `stream` of the family keyed by `master_seed`.
  static RandomStream derive(std::uint64_t master_seed, std::uint64_t stream) {
    return RandomStream(master_seed, stream);
  }

  std::uint64_t next() { return engine_(); }

  /// Uniform on [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// True with probability p; p <= 0 never fires and p >= 1 always does.
  bool bernoulli(double p) { return uniform() < p; }

 private:
  RandomStream(std::uint64_t master_seed, std::uint64_t stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(master_seed), static_cast<std::uint32_t>(master_seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
    engine_.seed(seq);
  }

  std::mt19937_64 engine_;
};

}  // namespace pentachain
