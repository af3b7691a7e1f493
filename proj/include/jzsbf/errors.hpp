#pragma once

#include <stdexcept>
#include <string>

namespace jzsbf {

// Base for everything the library throws on purpose.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
public:
    using Error::Error;
};

// A finite input whose result is not representable (e.g. p so small that t
// overflows).
class OverflowError : public DomainError {
public:
    using DomainError::DomainError;
};

// Quadrature or root finding ran out of budget.
class NonConvergenceError : public Error {
public:
    using Error::Error;
};

// Two independent computations of the same quantity disagree.
class ConsistencyError : public Error {
public:
    using Error::Error;
};

// Input data violates an invariant of the dataset schema.
class ValidationError : public Error {
public:
    using Error::Error;
};

// A file could not be read or written.
class IoError : public Error {
public:
    using Error::Error;
};

// Malformed input text. Row and column are 1-based; 0 means unknown.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t row, std::size_t column)
        : Error(format(what, row, column)), row_(row), column_(column) {}

    std::size_t row() const noexcept { return row_; }
    std::size_t column() const noexcept { return column_; }

private:
    static std::string format(const std::string& what, std::size_t row, std::size_t column) {
        if (row == 0) return what;
        std::string loc = "row " + std::to_string(row);
        if (column != 0) loc += ", column " + std::to_string(column);
        return loc + ": " + what;
    }

    std::size_t row_;
    std::size_t column_;
};

}  // namespace jzsbf
