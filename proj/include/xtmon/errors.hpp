#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace xtmon {

// Base of every error the library raises. The CLI maps the concrete
// subclasses onto distinct exit codes.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed input text. Line and column are 1-based; 0 means "unknown".
class ParseError : public Error {
public:
    ParseError(std::size_t line, std::size_t column, const std::string& what)
        : Error(format(line, column, what)), line_(line), column_(column) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    static std::string format(std::size_t line, std::size_t column, const std::string& what) {
        return "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what;
    }

    std::size_t line_;
    std::size_t column_;
};

// Well-formed input that violates a domain invariant or precondition.
class ValidationError : public Error {
public:
    using Error::Error;
};

// A numeric procedure could not produce an answer (no crossing, pole hit,
// unstable step, degenerate denominator).
class NumericError : public Error {
public:
    using Error::Error;
};

// A record the extraction needs is absent from the measurement set.
class MissingRecordError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace xtmon
