#include "algp/sobol.hpp"

#include <bit>

#include "algp/errors.hpp"

namespace algp {

namespace {

// Primitive polynomial degree s, coefficient bits a, and initial direction
// integers m for dimensions 2..10 (dimension 1 is the van der Corput sequence).
struct DirSpec {
  int s;
  unsigned a;
  unsigned m[5];
};

constexpr DirSpec kDirSpecs[SobolSequence::kMaxDim - 1] = {
    {1, 0, {1, 0, 0, 0, 0}},
    {2, 1, {1, 3, 0, 0, 0}},
    {3, 1, {1, 3, 1, 0, 0}},
    {3, 2, {1, 1, 1, 0, 0}},
    {4, 1, {1, 1, 3, 3, 0}},
    {4, 4, {1, 3, 5, 13, 0}},
    {5, 2, {1, 1, 5, 5, 17}},
    {5, 4, {1, 1, 5, 5, 5}},
    {5, 7, {1, 1, 7, 11, 19}},
};

}  // namespace

SobolSequence::SobolSequence(int dim) : dim_(dim) {
  if (dim < 1 || dim > kMaxDim) {
    throw DomainError("SobolSequence: dimension must be in [1, 10]");
  }
  dirs_.resize(dim);
  state_.assign(dim, 0);

  for (int k = 0; k < 64; ++k) {
    dirs_[0][k] = 1ull << (63 - k);
  }
  for (int j = 1; j < dim; ++j) {
    const DirSpec& spec = kDirSpecs[j - 1];
    const int s = spec.s;
    for (int k = 0; k < s; ++k) {
      dirs_[j][k] = static_cast<std::uint64_t>(spec.m[k]) << (63 - k);
    }
    for (int k = s; k < 64; ++k) {
      std::uint64_t v = dirs_[j][k - s] ^ (dirs_[j][k - s] >> s);
      for (int i = 1; i < s; ++i) {
        if ((spec.a >> (s - 1 - i)) & 1u) {
          v ^= dirs_[j][k - i];
        }
      }
      dirs_[j][k] = v;
    }
  }
}

void SobolSequence::next(double* out) {
  if (index_ > 0) {
    const int c = std::countr_one(index_ - 1);
    for (int j = 0; j < dim_; ++j) {
      state_[j] ^= dirs_[j][c];
    }
  }
  for (int j = 0; j < dim_; ++j) {
    out[j] = static_cast<double>(state_[j]) * 0x1.0p-64;
  }
  ++index_;
}

std::vector<std::array<double, SobolSequence::kMaxDim>> SobolSequence::take(
    std::int64_t count) {
  std::vector<std::array<double, kMaxDim>> pts(count);
  for (std::int64_t i = 0; i < count; ++i) {
    pts[i].fill(0.0);
    next(pts[i].data());
  }
  return pts;
}

}  // namespace algp
