#pragma once

#include <stdexcept>
#include <string>

namespace ncqm {

enum class ErrorCode {
    ArityMismatch,
    SingularStructure,
    NegativeKappa,
    ZeroTheta,
    CurlMismatch,
    NonHermitian,
    ThetaNonPositive,
    SingularDensity,
    DomainError,
    InternalMismatch,
    StepTooLarge,
    InsufficientData,
    ClusterAmbiguity,
    InvalidArgument,
};

const char* to_string(ErrorCode c);

// Single exception type for the library; callers switch on code().
class Error : public std::runtime_error {
public:
    Error(ErrorCode c, const std::string& what)
        : std::runtime_error(std::string(to_string(c)) + ": " + what), code_(c) {}
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

// True for errors that come from the physics (parameters outside a formula's
// domain) rather than from malformed input or a bug.
bool is_domain_error(ErrorCode c);

} // namespace ncqm
