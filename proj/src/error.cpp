#include "schurlab/error.hpp"

namespace schurlab {

std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::NotSquare: return "NotSquare";
        case ErrorKind::NotHermitian: return "NotHermitian";
        case ErrorKind::NotPSD: return "NotPSD";
        case ErrorKind::EmptyInput: return "EmptyInput";
        case ErrorKind::DimensionMismatch: return "DimensionMismatch";
        case ErrorKind::ShapeMismatch: return "ShapeMismatch";
        case ErrorKind::RowCountMismatch: return "RowCountMismatch";
        case ErrorKind::ZeroMatrix: return "ZeroMatrix";
        case ErrorKind::PrecisionNotReached: return "PrecisionNotReached";
        case ErrorKind::NotInjectiveOnSpan: return "NotInjectiveOnSpan";
        case ErrorKind::NotInQn: return "NotInQn";
        case ErrorKind::ActuallyExtremal: return "ActuallyExtremal";
        case ErrorKind::WitnessDegenerate: return "WitnessDegenerate";
        case ErrorKind::NormNotOne: return "NormNotOne";
        case ErrorKind::PreconditionViolated: return "PreconditionViolated";
        case ErrorKind::NormBracketExcludesOne: return "NormBracketExcludesOne";
        case ErrorKind::WitnessInvalid: return "WitnessInvalid";
        case ErrorKind::ColumnsNotUnit: return "ColumnsNotUnit";
        case ErrorKind::BaseNotFull: return "BaseNotFull";
        case ErrorKind::ExtraNotUnit: return "ExtraNotUnit";
        case ErrorKind::ParseError: return "ParseError";
        case ErrorKind::ShapeError: return "ShapeError";
        case ErrorKind::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

}  // namespace schurlab
