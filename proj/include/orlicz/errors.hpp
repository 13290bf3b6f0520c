#pragma once

#include <stdexcept>
#include <string>

namespace orlicz {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Argument exceeds the overflow-safe evaluation range of a gauge.
struct DomainOverflowError : Error {
    explicit DomainOverflowError(const std::string& msg) : Error(msg) {}
};

struct SpaceMismatchError : Error {
    explicit SpaceMismatchError(const std::string& msg) : Error(msg) {}
};

struct DimensionMismatchError : Error {
    explicit DimensionMismatchError(const std::string& msg) : Error(msg) {}
};

struct SizeExceededError : Error {
    explicit SizeExceededError(const std::string& msg) : Error(msg) {}
};

struct NullSetError : Error {
    explicit NullSetError(const std::string& msg) : Error(msg) {}
};

struct NotFoundError : Error {
    explicit NotFoundError(const std::string& msg) : Error(msg) {}
};

struct PreconditionError : Error {
    explicit PreconditionError(const std::string& msg) : Error(msg) {}
};

struct MethodInapplicableError : Error {
    explicit MethodInapplicableError(const std::string& msg) : Error(msg) {}
};

struct ZeroFunctionError : Error {
    explicit ZeroFunctionError(const std::string& msg) : Error(msg) {}
};

struct ParseError : Error {
    explicit ParseError(const std::string& msg) : Error(msg) {}
};

struct UnknownFilterError : Error {
    explicit UnknownFilterError(const std::string& msg) : Error(msg) {}
};

} // namespace orlicz
