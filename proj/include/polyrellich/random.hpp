#pragma once

#include <array>
#include <cstdint>
#include <random>

namespace polyrellich {

/// Identifier written into reports so a run can be reproduced bit-for-bit.
inline constexpr const char* kRngAlgorithm = "mt19937_64+splitmix64-streams+53bit-uniform";

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Seeded 64-bit generator. The engine is fully specified by the standard; the
/// conversion to doubles is done here because std distributions are
/// implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

  /// Independent stream `stream` derived from a base seed.
  static Rng stream(std::uint64_t seed, std::uint64_t stream) {
    return Rng(splitmix64(seed) ^ splitmix64(stream + 0x632BE59BD9B4E019ULL));
  }

  std::uint64_t next() { return engine_(); }

  /// Uniform on [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform on the open interval (0, 1).
  double uniform_open() {
    double u;
    do {
      u = uniform();
    } while (u == 0.0);
    return u;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  std::uint64_t below(std::uint64_t n) { return next() % n; }

 private:
  std::mt19937_64 engine_;
};

/// Radical-inverse (Halton) point in [0,1)^dim; `index` starts at 1.
inline std::array<double, 3> halton(std::uint64_t index, int dim) {
  static constexpr std::array<std::uint64_t, 3> bases{2, 3, 5};
  std::array<double, 3> out{};
  for (int d = 0; d < dim; ++d) {
    const std::uint64_t b = bases[static_cast<std::size_t>(d)];
    double f = 1.0;
    double r = 0.0;
    for (std::uint64_t i = index; i > 0; i /= b) {
      f /= static_cast<double>(b);
      r += f * static_cast<double>(i % b);
    }
    out[static_cast<std::size_t>(d)] = r;
  }
  return out;
}

}  // namespace polyrellich
