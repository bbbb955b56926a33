#pragma once

#include <stdexcept>
#include <string>

namespace cubic {

// Every failure raised by the library derives from Error so callers can
// catch the family while tests match the precise kind.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define CUBIC_DEFINE_ERROR(Name)              \
  class Name : public Error {                 \
   public:                                    \
    using Error::Error;                       \
  }

CUBIC_DEFINE_ERROR(NotTotallyReal);
CUBIC_DEFINE_ERROR(NotTotallyPositive);
CUBIC_DEFINE_ERROR(NotPrime);
CUBIC_DEFINE_ERROR(Singular);
CUBIC_DEFINE_ERROR(NotSublattice);
CUBIC_DEFINE_ERROR(NoSolution);
CUBIC_DEFINE_ERROR(PreconditionFailed);
CUBIC_DEFINE_ERROR(SearchExhausted);
CUBIC_DEFINE_ERROR(NonConvergence);
CUBIC_DEFINE_ERROR(SingularM);
CUBIC_DEFINE_ERROR(Empty);
CUBIC_DEFINE_ERROR(TooFewSamples);
CUBIC_DEFINE_ERROR(ParseError);
// A mathematical invariant that must hold was observed to fail.
CUBIC_DEFINE_ERROR(InternalError);

#undef CUBIC_DEFINE_ERROR

}  // namespace cubic
