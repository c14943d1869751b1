#pragma once

#include <stdexcept>
#include <string>

namespace algp {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ConfigError : Error { using Error::Error; };
struct DomainError : Error { using Error::Error; };
struct DimensionMismatch : Error { using Error::Error; };
struct DuplicateInput : Error { using Error::Error; };
struct SingularCovariance : Error { using Error::Error; };
struct DegenerateSample : Error { using Error::Error; };
struct EmptyPool : Error { using Error::Error; };
struct NonFiniteState : Error { using Error::Error; };
struct ReferenceUnavailable : Error { using Error::Error; };

}  // namespace algp
