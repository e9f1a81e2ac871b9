#pragma once

#include <stdexcept>
#include <string>

namespace gradings {

/// Exit-code families used by the command-line front end.
enum class ErrorKind {
  Input = 1,        // parse, reference, validation, contract violations
  Unsupported = 2,  // non-split spectra and similar field restrictions
  CapExceeded = 3,  // enumeration bounds
  Internal = 4,     // a proven identity failed to verify
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string name, const std::string& what)
      : std::runtime_error(name + ": " + what), kind_(kind), name_(std::move(name)) {}

  ErrorKind kind() const noexcept { return kind_; }
  int exit_code() const noexcept { return static_cast<int>(kind_); }
  const std::string& name() const noexcept { return name_; }

 private:
  ErrorKind kind_;
  std::string name_;
};

#define GRADINGS_DEFINE_ERROR(Type, Kind)                  \
  class Type : public Error {                              \
   public:                                                 \
    explicit Type(const std::string& what)                 \
        : Error(ErrorKind::Kind, #Type, what) {}           \
  };

GRADINGS_DEFINE_ERROR(ShapeError, Input)
GRADINGS_DEFINE_ERROR(ParseError, Input)
GRADINGS_DEFINE_ERROR(ReferenceError, Input)
GRADINGS_DEFINE_ERROR(ValidationError, Input)
GRADINGS_DEFINE_ERROR(FlagViolation, Input)
GRADINGS_DEFINE_ERROR(IncompatibleDegrees, Input)
GRADINGS_DEFINE_ERROR(NotCommutingError, Input)
GRADINGS_DEFINE_ERROR(NotASubgroup, Input)
GRADINGS_DEFINE_ERROR(NotAutomorphism, Input)
GRADINGS_DEFINE_ERROR(NotARefinement, Input)
GRADINGS_DEFINE_ERROR(IdentityComponentNotCartan, Input)
GRADINGS_DEFINE_ERROR(SectionInvalid, Input)
GRADINGS_DEFINE_ERROR(PreconditionError, Input)
GRADINGS_DEFINE_ERROR(NonSplitError, Unsupported)
GRADINGS_DEFINE_ERROR(NotDiagonalizableError, Unsupported)
GRADINGS_DEFINE_ERROR(CapExceeded, CapExceeded)
GRADINGS_DEFINE_ERROR(AxiomFailure, Internal)
GRADINGS_DEFINE_ERROR(VerificationFailure, Internal)

#undef GRADINGS_DEFINE_ERROR

}  // namespace gradings
