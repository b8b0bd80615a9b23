#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fie23 {

enum class ErrorKind {
    NonMonotonicTimes,
    NonPositiveStep,
    DegenerateBeta,
    DimensionMismatch,
    NewtonDiverged,
    SingularLinearSystem,
    MinStepReached,
    NonFiniteState,
    InvalidConfig,
    UnknownProblem,
    IoError,
    ParseError,
};

[[nodiscard]] std::string_view to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library carries one of the kinds above so
/// callers (the adaptive controller, the CLI) can branch on it.
class SolverError : public std::runtime_error {
public:
    SolverError(ErrorKind kind, const std::string& message);

    [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace fie23
