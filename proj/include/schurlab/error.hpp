#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace schurlab {

enum class ErrorKind {
    NotSquare,
    NotHermitian,
    NotPSD,
    EmptyInput,
    DimensionMismatch,
    ShapeMismatch,
    RowCountMismatch,
    ZeroMatrix,
    PrecisionNotReached,
    NotInjectiveOnSpan,
    NotInQn,
    ActuallyExtremal,
    WitnessDegenerate,
    NormNotOne,
    PreconditionViolated,
    NormBracketExcludesOne,
    WitnessInvalid,
    ColumnsNotUnit,
    BaseNotFull,
    ExtraNotUnit,
    ParseError,
    ShapeError,
    InvalidArgument,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library carries one of the kinds above so the
/// CLI can map it onto an exit code and a structured report.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace schurlab
