#include "algp/types.hpp"

#include "algp/errors.hpp"

namespace algp {

std::string to_string(LearnMode m) {
  switch (m) {
    case LearnMode::GaussianKernel: return "gaussian";
    case LearnMode::DiracKernel: return "dirac";
    case LearnMode::MaxVariance: return "mov";
    default: return "conventional";
  }
}

std::string to_string(TailMode m) {
  switch (m) {
    case TailMode::Both: return "both";
    case TailMode::CdfOnly: return "cdf";
    default: return "ccdf";
  }
}

LearnMode learn_mode_from_string(const std::string& s) {
  if (s == "gaussian") return LearnMode::GaussianKernel;
  if (s == "dirac") return LearnMode::DiracKernel;
  if (s == "mov") return LearnMode::MaxVariance;
  if (s == "conventional") return LearnMode::Conventional;
  throw ConfigError("unknown learning mode '" + s + "'");
}

TailMode tail_mode_from_string(const std::string& s) {
  if (s == "both") return TailMode::Both;
  if (s == "cdf") return TailMode::CdfOnly;
  if (s == "ccdf") return TailMode::CcdfOnly;
  throw ConfigError("unknown tail mode '" + s + "'");
}

}  // namespace algp
