#pragma once

#include <stdexcept>
#include <string>

namespace topopools {

// Error hierarchy shared by all modules. Every error carries a
// human-readable message; callers that need to branch catch the
// concrete type.

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ArgumentError : Error {
    using Error::Error;
};

struct ConstructionError : Error {
    using Error::Error;
};

struct JoinError : Error {
    using Error::Error;
};

struct DomainError : Error {
    using Error::Error;
};

struct ColorError : Error {
    using Error::Error;
};

struct SizeError : Error {
    using Error::Error;
};

struct ConfigError : Error {
    using Error::Error;
};

struct NotEqualPoolError : Error {
    using Error::Error;
};

struct BoundExceeded : Error {
    using Error::Error;
};

struct InternalError : Error {
    using Error::Error;
};

} // namespace topopools
