#include "ncqm/errors.hpp"

namespace ncqm {

const char* to_string(ErrorCode c) {
    switch (c) {
    case ErrorCode::ArityMismatch: return "ArityMismatch";
    case ErrorCode::SingularStructure: return "SingularStructure";
    case ErrorCode::NegativeKappa: return "NegativeKappa";
    case ErrorCode::ZeroTheta: return "ZeroTheta";
    case ErrorCode::CurlMismatch: return "CurlMismatch";
    case ErrorCode::NonHermitian: return "NonHermitian";
    case ErrorCode::ThetaNonPositive: return "ThetaNonPositive";
    case ErrorCode::SingularDensity: return "SingularDensity";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::InternalMismatch: return "InternalMismatch";
    case ErrorCode::StepTooLarge: return "StepTooLarge";
    case ErrorCode::InsufficientData: return "InsufficientData";
    case ErrorCode::ClusterAmbiguity: return "ClusterAmbiguity";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

bool is_domain_error(ErrorCode c) {
    switch (c) {
    case ErrorCode::SingularStructure:
    case ErrorCode::NegativeKappa:
    case ErrorCode::ZeroTheta:
    case ErrorCode::CurlMismatch:
    case ErrorCode::ThetaNonPositive:
    case ErrorCode::SingularDensity:
    case ErrorCode::DomainError:
    case ErrorCode::StepTooLarge:
    case ErrorCode::InsufficientData:
    case ErrorCode::ClusterAmbiguity:
        return true;
    default:
        return false;
    }
}

} // namespace ncqm
