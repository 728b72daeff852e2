#pragma once

#include <stdexcept>
#include <string>

namespace gvi {

/// Base class for all library errors.
struct GviError : std::runtime_error {
    explicit GviError(const std::string& what) : std::runtime_error(what) {}
};

/// p1 puts mass where p2 has none (beyond the probability floor).
struct AbsoluteContinuityViolation : GviError {
    using GviError::GviError;
};

/// Regularized greedy called with lambda + tau <= 0.
struct DegenerateTemperature : GviError {
    using GviError::GviError;
};

/// Iterative solver failed to reach tolerance within its iteration cap.
struct NonConvergence : GviError {
    using GviError::GviError;
};

/// Maze generation could not connect start and goal within the retry budget.
struct UnreachableGoal : GviError {
    using GviError::GviError;
};

/// Action index outside [0, action_count).
struct InvalidAction : GviError {
    using GviError::GviError;
};

/// Tensor/table dimensions do not line up.
struct ShapeMismatch : GviError {
    using GviError::GviError;
};

/// Bound computation given a schedule that does not match the trace.
struct MismatchedSchedule : GviError {
    using GviError::GviError;
};

/// Invalid experiment configuration.
struct ConfigError : GviError {
    using GviError::GviError;
};

}  // namespace gvi
