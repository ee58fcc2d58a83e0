#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace parobs {

/// Every failure the library reports. One enumerator per named error condition.
enum class ErrorKind {
    InvalidGeometry,
    DegenerateGrid,
    ShapeMismatch,
    StepTooLarge,
    NewtonDiverged,
    GeometryMismatch,
    PicardStalled,
    NotConverged,
    SpecInvalid,
    MissingDerivativeData,
    RadiiUnresolvable,
    CenterNotZero,
    StripOutsideGrid,
    IterationStalled,
    WindowOutsideGrid,
    EmptyFreeBoundary,
    ConfigInvalid,
    Io,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

/// Solver failure that carries the last residual and, once propagated through
/// a march, the time level at which it happened.
class SolverError : public Error {
public:
    SolverError(ErrorKind kind, const std::string& what, double last_residual, int time_level = -1)
        : Error(kind, what), last_residual_(last_residual), time_level_(time_level) {}

    double last_residual() const noexcept { return last_residual_; }
    int time_level() const noexcept { return time_level_; }

private:
    double last_residual_;
    int time_level_;
};

}  // namespace parobs
