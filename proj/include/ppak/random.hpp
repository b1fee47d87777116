#pragma once

#include <cstdint>
#include <random>

namespace ppak {

/// Seeded generator with platform-independent uniform and normal draws
/// (the standard distributions are not reproducible across libraries).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform on [0, 1).
  double uniform() { return double(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  double normal();

  /// Independent stream for the k-th member of an ensemble.
  static Rng stream(std::uint64_t seed, std::uint64_t k);

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace ppak
