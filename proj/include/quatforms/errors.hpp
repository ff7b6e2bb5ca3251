#pragma once

#include <stdexcept>
#include <string>

namespace quatforms {

/// Bad input: out-of-range parameters, unsupported levels, malformed files.
struct ValidationError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// An internal invariant failed; the computation cannot be trusted.
struct ComputationDefect : std::runtime_error {
  using std::runtime_error::runtime_error;
};

#define QUATFORMS_VALIDATION_ERROR(Name)        \
  struct Name : ValidationError {               \
    using ValidationError::ValidationError;     \
  }
#define QUATFORMS_DEFECT(Name)                  \
  struct Name : ComputationDefect {             \
    using ComputationDefect::ComputationDefect; \
  }

QUATFORMS_VALIDATION_ERROR(NonUnitConstantTerm);
QUATFORMS_VALIDATION_ERROR(InvalidMonoidElement);
QUATFORMS_VALIDATION_ERROR(NegativeWeightOnPolynomial);
QUATFORMS_VALIDATION_ERROR(PrecisionInsufficient);
QUATFORMS_VALIDATION_ERROR(EvenNorm);
QUATFORMS_VALIDATION_ERROR(UnsupportedStabilizer);

QUATFORMS_DEFECT(NoLiftInBound);
QUATFORMS_DEFECT(SingularToPrecision);
QUATFORMS_DEFECT(NoUnitCoordinate);
QUATFORMS_DEFECT(DecompositionFailed);
QUATFORMS_DEFECT(WitnessNotFound);
QUATFORMS_DEFECT(UnstableLift);
QUATFORMS_DEFECT(RankDeficient);
QUATFORMS_DEFECT(IndistinctRoots);
QUATFORMS_DEFECT(InconsistentRatios);

#undef QUATFORMS_VALIDATION_ERROR
#undef QUATFORMS_DEFECT

}  // namespace quatforms
