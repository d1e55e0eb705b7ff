#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fif {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Non-finite numbers, empty sets, negative arguments and similar misuse.
class InvalidInput : public Error {
public:
    using Error::Error;
};

/// A data system or map system that violates its construction conditions.
class ValidationError : public Error {
public:
    explicit ValidationError(const std::string& what, std::ptrdiff_t index = -1)
        : Error(what), index_(index) {}

    /// First offending sequence index, or -1 when the error is not index-specific.
    std::ptrdiff_t index() const noexcept { return index_; }

private:
    std::ptrdiff_t index_;
};

/// An argument outside the domain of a map ([a,b], [a,b] x Y, or a subinterval).
class DomainError : public Error {
public:
    using Error::Error;
};

/// A vertical map produced a value outside Y.
class RangeViolation : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class IndexError : public Error {
public:
    using Error::Error;
};

/// Malformed or incomplete configuration input.
class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace fif
