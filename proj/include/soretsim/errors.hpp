#pragma once

#include <stdexcept>
#include <string>

namespace soretsim {

/// Failure categories. Each maps 1:1 onto a C-API status and a CLI exit code.
enum class ErrorCode {
    InvalidArgument,
    InvalidRates,         // 2*lambda*epsilon outside the admissible range
    InvalidState,         // state violates its invariants
    EmptyOrColdSite,      // closure requested for n = 0 or K = 0
    StepTooLarge,         // one-step update left [0,1] by more than tolerance
    TooLarge,             // enumeration guard tripped
    UnstableStep,         // explicit step beyond the stability bound
    BoundsViolated,       // density left [0, rho_m] beyond tolerance
    SingularForce,        // thermodynamic force at rho = 0 or rho = rho_m
    SingularCoord,        // canonical coordinate at domain boundary
    ConvergenceFailure,   // refinement errors not monotone
    ConservationViolated, // runtime audit: N or E drifted
    EntropyDecreased,     // runtime audit: second law violated
    OracleMismatch,       // mean-field step disagrees with the exact oracle
    ConfigInvalid,
    Io,
    Internal,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void raise(ErrorCode code, const std::string& message) {
    throw Error(code, message);
}

} // namespace soretsim
