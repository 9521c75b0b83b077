#pragma once

#include <stdexcept>
#include <string>

namespace alefs {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define ALEFS_ERROR(Name)        \
  class Name : public Error {    \
   public:                       \
    using Error::Error;          \
  }

ALEFS_ERROR(AdmissibilityViolation);
ALEFS_ERROR(KernelSupportError);
ALEFS_ERROR(DegenerateDamping);
ALEFS_ERROR(NotDiffeomorphism);
ALEFS_ERROR(GridMismatch);
ALEFS_ERROR(SolverDivergence);
ALEFS_ERROR(CoefficientSymmetryViolation);
ALEFS_ERROR(FixedPointDivergence);
ALEFS_ERROR(SmallnessViolation);
ALEFS_ERROR(ParseError);
ALEFS_ERROR(ValidationError);
ALEFS_ERROR(IoError);

#undef ALEFS_ERROR

}  // namespace alefs
