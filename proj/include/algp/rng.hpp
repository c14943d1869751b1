#pragma once

#include <cstdint>
#include <random>

#include "algp/normal.hpp"

namespace algp {

// Purpose tags used to derive independent substreams from one master seed.
enum class Stream : std::uint64_t {
  InitialDesign = 1,
  Pool = 2,
  Optimizer = 3,
  Reference = 4,
  Run = 5,
};

inline std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ull;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBull;
  z ^= z >> 31;
  return z;
}

inline std::uint64_t derive_seed(std::uint64_t master, Stream purpose,
                                 std::uint64_t index) {
  const std::uint64_t golden = 0x9E3779B97F4A7C15ull;
  std::uint64_t s = mix64(master + golden * (static_cast<std::uint64_t>(purpose) + 1));
  return mix64(s + golden * (index + 1));
}

// Deterministic generator with platform-independent uniform and Gaussian draws.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  // Uniform on the open interval (0, 1).
  double uniform01() { return (static_cast<double>(eng_() >> 11) + 0.5) * 0x1.0p-53; }

  double gaussian() { return std_normal_inv_cdf(uniform01()); }

  std::uint64_t bits() { return eng_(); }

 private:
  std::mt19937_64 eng_;
};

}  // namespace algp
