#pragma once

#include <stdexcept>
#include <string>

namespace adafd {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

#define ADAFD_DEFINE_ERROR(NAME)                    \
  struct NAME : Error {                             \
    explicit NAME(const std::string& msg = #NAME)   \
        : Error(std::string(#NAME) + ": " + msg) {} \
  }

ADAFD_DEFINE_ERROR(SingularSystem);
ADAFD_DEFINE_ERROR(DegreeTooLow);
ADAFD_DEFINE_ERROR(DegenerateRatio);
ADAFD_DEFINE_ERROR(NoValidAlpha);
ADAFD_DEFINE_ERROR(ZeroNoiseLevel);
ADAFD_DEFINE_ERROR(NonFiniteFunctionValue);
ADAFD_DEFINE_ERROR(IndexOutOfRange);
ADAFD_DEFINE_ERROR(ZeroScale);
ADAFD_DEFINE_ERROR(UnknownName);
ADAFD_DEFINE_ERROR(MissingAnalyticDerivatives);
ADAFD_DEFINE_ERROR(ZeroDerivative);

#undef ADAFD_DEFINE_ERROR

}  // namespace adafd
