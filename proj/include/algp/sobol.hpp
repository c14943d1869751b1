#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace algp {

// Gray-code Sobol sequence with embedded direction numbers (up to 10 dimensions).
// The first point of the unshifted sequence is the origin.
class SobolSequence {
 public:
  static constexpr int kMaxDim = 10;

  explicit SobolSequence(int dim);

  int dimension() const { return dim_; }

  // Writes the next point into out[0..dim).
  void next(double* out);

  std::vector<std::array<double, kMaxDim>> take(std::int64_t count);

 private:
  int dim_;
  std::uint64_t index_ = 0;
  std::vector<std::array<std::uint64_t, 64>> dirs_;
  std::vector<std::uint64_t> state_;
};

}  // namespace algp
