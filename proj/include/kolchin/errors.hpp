#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace kolchin {

// Base of every error raised by the library. Anything derived from it that is
// not a ResourceLimit is a domain error (bad input, violated precondition).
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DomainError : public Error {
public:
    using Error::Error;
};

// A computation would exceed one of the configured caps. The message names
// the offending sub-expression or size.
class ResourceLimit : public Error {
public:
    using Error::Error;
};

class InputNotNumericalPolynomial : public DomainError {
public:
    using DomainError::DomainError;
};

class AmbientMismatch : public DomainError {
public:
    using DomainError::DomainError;
};

class EmptySupport : public DomainError {
public:
    using DomainError::DomainError;
};

class ParseError : public DomainError {
public:
    ParseError(std::size_t line, std::size_t column, const std::string& what)
        : DomainError("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
          line_{line}, column_{column}, detail_{what} {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }
    /// The message without its position prefix.
    const std::string& detail() const noexcept { return detail_; }

private:
    std::size_t line_;
    std::size_t column_;
    std::string detail_;
};

} // namespace kolchin
