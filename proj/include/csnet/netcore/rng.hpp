#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

namespace csnet {

/// Seeded generator with platform-independent derived distributions.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the
/// standard. The standard library distributions are not, so the uniform,
/// integer and Gaussian draws are defined here:
///   - uniform():  top 53 bits of one engine draw scaled by 2^-53, in [0,1).
///   - below(n):   rejection sampling on the largest multiple of n.
///   - gaussian(): Box-Muller on two uniform() draws, u1 mapped to (0,1];
///                 both outputs of a pair are used, cosine branch first.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Uniform integer in [0, n). n must be positive.
  std::uint64_t below(std::uint64_t n);

  double gaussian();

  // Fisher-Yates, last index first.
  template <typename T>
  void shuffle(std::vector<T>& items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      const auto j = static_cast<std::size_t>(below(i));
      std::swap(items[i - 1], items[j]);
    }
  }

private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace csnet
