#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <utility>

namespace permabound {

std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// mt19937_64 wrapper with portable derived quantities. The standard
/// distributions are implementation-defined, so bounded integers and uniform
/// reals are produced here from raw 64-bit output.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

  /// Independent stream `stream` of the generator family `seed`.
  static Rng substream(std::uint64_t seed, std::uint64_t stream) {
    return Rng(splitmix64(seed) ^ splitmix64(stream + 0x6a09e667f3bcc909ULL));
  }

  std::uint64_t next() { return engine_(); }
  /// Uniform in [0, bound), bound >= 1 (Lemire's multiply-shift with rejection).
  std::uint64_t below(std::uint64_t bound);
  /// Uniform in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  /// Uniform in (0, 1].
  double uniform_open0() { return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53; }

  template <typename T>
  void shuffle(std::span<T> items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      const std::size_t k = static_cast<std::size_t>(below(i));
      std::swap(items[i - 1], items[k]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace permabound
