#pragma once

#include <stdexcept>
#include <string>

namespace uwr {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidConfigError : Error { using Error::Error; };
struct OutOfBeamError : Error { using Error::Error; };
struct EmptyRelaySetError : Error { using Error::Error; };
struct ZeroVelocityError : Error { using Error::Error; };
struct DepthExceededError : Error { using Error::Error; };
struct EnergyExhaustedError : Error { using Error::Error; };
struct InfeasibleLinkError : Error { using Error::Error; };
struct DivergedParametersError : Error { using Error::Error; };
struct StageInputError : Error { using Error::Error; };
struct FormatError : Error { using Error::Error; };
struct IoError : Error { using Error::Error; };

} // namespace uwr
