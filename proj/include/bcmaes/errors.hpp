#pragma once

#include <stdexcept>
#include <string>

namespace bcmaes {

/// Root of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define BCMAES_DEFINE_ERROR(Name)          \
  class Name : public Error {              \
   public:                                 \
    using Error::Error;                    \
  }

// linalg_stats
BCMAES_DEFINE_ERROR(NotPositiveDefinite);
BCMAES_DEFINE_ERROR(RepairFailed);
BCMAES_DEFINE_ERROR(NotSymmetric);

// niw
BCMAES_DEFINE_ERROR(DegreesOfFreedomTooLow);
BCMAES_DEFINE_ERROR(InvariantViolation);

// likelihood_estimation
BCMAES_DEFINE_ERROR(NonPositiveDensity);
BCMAES_DEFINE_ERROR(NonFiniteFitness);

// restart_controller
BCMAES_DEFINE_ERROR(InvalidLevels);

// optimizer
BCMAES_DEFINE_ERROR(InvalidConfig);

// benchmarks
BCMAES_DEFINE_ERROR(UnknownFunction);

// cli_harness
BCMAES_DEFINE_ERROR(UsageError);
BCMAES_DEFINE_ERROR(IoError);
BCMAES_DEFINE_ERROR(SchemaError);

#undef BCMAES_DEFINE_ERROR

}  // namespace bcmaes
