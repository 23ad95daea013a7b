#pragma once

#include <stdexcept>
#include <string>

namespace omegalab {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define OMEGALAB_DEFINE_ERROR(Name)                                   \
  class Name : public Error {                                         \
   public:                                                            \
    explicit Name(const std::string& what) : Error(#Name ": " + what) {} \
  };

OMEGALAB_DEFINE_ERROR(InvalidDatum)
OMEGALAB_DEFINE_ERROR(BoundExceeded)
OMEGALAB_DEFINE_ERROR(NotPositiveCone)
OMEGALAB_DEFINE_ERROR(NotNegativeCone)
OMEGALAB_DEFINE_ERROR(NotDominant)
OMEGALAB_DEFINE_ERROR(DegenerateForm)
OMEGALAB_DEFINE_ERROR(NonTorsion)
OMEGALAB_DEFINE_ERROR(UnexpectedKernelDim)
OMEGALAB_DEFINE_ERROR(PredicateViolated)
OMEGALAB_DEFINE_ERROR(Undefined)
OMEGALAB_DEFINE_ERROR(NotMinimalForm)
OMEGALAB_DEFINE_ERROR(FieldMismatch)

#undef OMEGALAB_DEFINE_ERROR

}  // namespace omegalab
