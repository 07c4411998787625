#include "common/error.hpp"

namespace corank {

const char* error_code_name(ErrorCode code)
{
    switch (code) {
    case ErrorCode::Syntax: return "Syntax";
    case ErrorCode::UnknownIdentifier: return "UnknownIdentifier";
    case ErrorCode::UnknownCoordinate: return "UnknownCoordinate";
    case ErrorCode::InvalidChart: return "InvalidChart";
    case ErrorCode::ChartMismatch: return "ChartMismatch";
    case ErrorCode::DegreeMismatch: return "DegreeMismatch";
    case ErrorCode::DegreeUnderflow: return "DegreeUnderflow";
    case ErrorCode::Singular: return "Singular";
    case ErrorCode::DivisionObstructed: return "DivisionObstructed";
    case ErrorCode::BadTransversal: return "BadTransversal";
    case ErrorCode::NotIntegrable: return "NotIntegrable";
    case ErrorCode::NotTransversal: return "NotTransversal";
    case ErrorCode::NotCorankOne: return "NotCorankOne";
    case ErrorCode::Degenerate: return "Degenerate";
    case ErrorCode::DegenerateVolume: return "DegenerateVolume";
    case ErrorCode::InvariantsNotVanishing: return "InvariantsNotVanishing";
    case ErrorCode::NotPoissonField: return "NotPoissonField";
    case ErrorCode::Undecided: return "Undecided";
    case ErrorCode::Validation: return "Validation";
    case ErrorCode::Io: return "Io";
    case ErrorCode::Internal: return "Internal";
    }
    return "Unknown";
}

}  // namespace corank
