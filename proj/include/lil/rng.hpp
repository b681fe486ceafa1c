#ifndef LIL_RNG_HPP
#define LIL_RNG_HPP

#include <cstdint>
#include <random>

namespace lil {

/// Seeded generator with platform-independent integer draws. Distributions
/// from <random> are implementation-defined, so reports would not be
/// reproducible across standard libraries; plain modulo draws are.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform in [lo, hi], inclusive.
  long pick(long lo, long hi) {
    const std::uint64_t range = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<long>(engine_() % range);
  }

  std::size_t index(std::size_t size) {
    return static_cast<std::size_t>(engine_() % size);
  }

  bool chance(std::uint64_t num, std::uint64_t den) {
    return engine_() % den < num;
  }

  double real01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

private:
  std::mt19937_64 engine_;
};

} // namespace lil

#endif
