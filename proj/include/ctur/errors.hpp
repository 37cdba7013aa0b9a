#pragma once

#include <stdexcept>
#include <string>

namespace ctur {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  /// Short stable name used in CSV error cells and validation reports.
  virtual const char* kind() const noexcept { return "Error"; }
};

#define CTUR_DEFINE_ERROR(Name)                                   \
  class Name : public Error {                                     \
   public:                                                        \
    using Error::Error;                                           \
    const char* kind() const noexcept override { return #Name; }  \
  }

CTUR_DEFINE_ERROR(DimensionError);
CTUR_DEFINE_ERROR(ValidationError);
CTUR_DEFINE_ERROR(ConfigError);
CTUR_DEFINE_ERROR(NonUniqueSteadyState);
CTUR_DEFINE_ERROR(PositivityViolation);
CTUR_DEFINE_ERROR(BranchCrossing);
CTUR_DEFINE_ERROR(InternalConsistencyError);
CTUR_DEFINE_ERROR(CurrentVanishes);
CTUR_DEFINE_ERROR(PreconditionError);
CTUR_DEFINE_ERROR(StepError);
CTUR_DEFINE_ERROR(SimulationError);
CTUR_DEFINE_ERROR(DegenerateRate);
CTUR_DEFINE_ERROR(IoError);

#undef CTUR_DEFINE_ERROR

}  // namespace ctur
