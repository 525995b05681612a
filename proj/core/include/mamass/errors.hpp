#pragma once

#include <stdexcept>
#include <string>

namespace mamass {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define MAMASS_ERROR(Name)                         \
  class Name : public Error {                      \
   public:                                         \
    explicit Name(const std::string& what_arg)     \
        : Error(std::string(#Name ": ") + what_arg) {} \
  }

MAMASS_ERROR(ZeroPoint);
MAMASS_ERROR(OnAxis);
MAMASS_ERROR(CheckFailed);
MAMASS_ERROR(EvalFailure);
MAMASS_ERROR(BadRadii);
MAMASS_ERROR(InsufficientData);
MAMASS_ERROR(ParseError);
MAMASS_ERROR(DimensionMismatch);
MAMASS_ERROR(OutsideDomain);
MAMASS_ERROR(NotInvariant);
MAMASS_ERROR(NotPositiveDefinite);
MAMASS_ERROR(CounterexampleFound);
MAMASS_ERROR(UnsupportedDimension);
MAMASS_ERROR(TooCloseToOrigin);
MAMASS_ERROR(InvalidArgument);

#undef MAMASS_ERROR

}  // namespace mamass
