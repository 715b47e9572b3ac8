// errors.hpp — Exception types shared by all multitime modules.

#pragma once

#include <stdexcept>
#include <string>

namespace multitime {

// Base class for everything the library throws on purpose.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DimensionMismatch : Error { using Error::Error; };
struct Overflow : Error { using Error::Error; };
struct NumericalFailure : Error { using Error::Error; };
struct RankDeficient : Error { using Error::Error; };
struct ArityMismatch : Error { using Error::Error; };
struct IndexOutOfRange : Error { using Error::Error; };
struct PathStartMismatch : Error { using Error::Error; };
struct EndpointMismatch : Error { using Error::Error; };
struct NotHermitian : Error { using Error::Error; };
struct TrivialPartition : Error { using Error::Error; };
struct ResolventSingular : Error { using Error::Error; };
struct NotInSubspace : Error { using Error::Error; };
struct NotNormalized : Error { using Error::Error; };
struct ParseError : Error { using Error::Error; };
struct SchemaError : Error { using Error::Error; };
struct GateRefusal : Error { using Error::Error; };
struct IoError : Error { using Error::Error; };

}  // namespace multitime
