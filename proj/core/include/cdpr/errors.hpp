#pragma once

#include <stdexcept>
#include <string>

namespace cdpr {

struct CdprError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// End effector coincident with an anchor; the cable direction is undefined.
struct DegenerateConfiguration : CdprError {
    using CdprError::CdprError;
};

// No nonnegative bounded tension set can hold the requested position.
struct InfeasibleEquilibrium : CdprError {
    using CdprError::CdprError;
};

struct ActionOutOfBounds : CdprError {
    using CdprError::CdprError;
};

struct StepBeforeReset : CdprError {
    using CdprError::CdprError;
};

struct DimensionMismatch : CdprError {
    using CdprError::CdprError;
};

struct ActionOutOfSupport : CdprError {
    using CdprError::CdprError;
};

struct EmptyBatch : CdprError {
    using CdprError::CdprError;
};

struct NonFiniteGradient : CdprError {
    using CdprError::CdprError;
};

struct InsufficientReplay : CdprError {
    using CdprError::CdprError;
};

struct AllCandidatesDiverged : CdprError {
    using CdprError::CdprError;
};

struct TrajectoryLeavesWorkspace : CdprError {
    using CdprError::CdprError;
};

struct EmptySequence : CdprError {
    using CdprError::CdprError;
};

struct ConfigError : CdprError {
    using CdprError::CdprError;
};

struct PolicyIoError : CdprError {
    using CdprError::CdprError;
};

} // namespace cdpr
