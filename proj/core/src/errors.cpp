#include "fie23/errors.hpp"

namespace fie23 {

std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::NonMonotonicTimes: return "NonMonotonicTimes";
        case ErrorKind::NonPositiveStep: return "NonPositiveStep";
        case ErrorKind::DegenerateBeta: return "DegenerateBeta";
        case ErrorKind::DimensionMismatch: return "DimensionMismatch";
        case ErrorKind::NewtonDiverged: return "NewtonDiverged";
        case ErrorKind::SingularLinearSystem: return "SingularLinearSystem";
        case ErrorKind::MinStepReached: return "MinStepReached";
        case ErrorKind::NonFiniteState: return "NonFiniteState";
        case ErrorKind::InvalidConfig: return "InvalidConfig";
        case ErrorKind::UnknownProblem: return "UnknownProblem";
        case ErrorKind::IoError: return "IoError";
        case ErrorKind::ParseError: return "ParseError";
    }
    return "Unknown";
}

SolverError::SolverError(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

}  // namespace fie23
