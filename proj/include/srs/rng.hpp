#ifndef SRS_RNG_HPP
#define SRS_RNG_HPP

#include <cstdint>
#include <random>
#include <stdexcept>

namespace srs {

/// One seeded 64-bit Mersenne Twister per run.
///
/// The standard library's distributions are implementation-defined, so the
/// two draws used by the simulator are written out here to keep runs
/// bit-identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, n), unbiased via rejection.
  std::uint64_t uniform_index(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("uniform_index needs n > 0");
    const std::uint64_t limit = std::uint64_t(-1) - (std::uint64_t(-1) % n + 1) % n;
    std::uint64_t draw;
    do {
      draw = engine_();
    } while (draw > limit);
    return draw % n;
  }

 private:
  std::mt19937_64 engine_;
};

/// splitmix64 finalizer; derives independent per-repeat seeds from a master.
constexpr std::uint64_t mix_seed(std::uint64_t value) {
  value += 0x9e3779b97f4a7c15ULL;
  value = (value ^ (value >> 30)) * 0xbf58476d1ce4e5b9ULL;
  value = (value ^ (value >> 27)) * 0x94d049bb133111ebULL;
  return value ^ (value >> 31);
}

}  // namespace srs

#endif  // SRS_RNG_HPP
