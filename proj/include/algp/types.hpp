#pragma once

#include <string>

namespace algp {

enum class LearnMode { GaussianKernel, DiracKernel, MaxVariance, Conventional };

// Which tail expression weights the CDF-band errors:
//   Both     -> min[F, 1 - F]
//   CdfOnly  -> F
//   CcdfOnly -> 1 - F
enum class TailMode { Both, CdfOnly, CcdfOnly };

std::string to_string(LearnMode m);
std::string to_string(TailMode m);
LearnMode learn_mode_from_string(const std::string& s);
TailMode tail_mode_from_string(const std::string& s);

}  // namespace algp
