#pragma once

#include <stdexcept>
#include <string>

namespace cdstab {

// Base for everything this library throws on purpose.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Input text could not be parsed; `offset` is the byte position of the
// first offending character (== text size when input ended too early).
struct ParseError : Error {
    ParseError(const std::string& what, std::size_t offset_)
        : Error(what), offset(offset_) {}
    std::size_t offset;
};

// Expression evaluation left the real domain (log of a non-positive value,
// division by zero, ...).
struct EvalError : Error {
    using Error::Error;
};

// A precondition on user-facing data failed (grid sizes, coefficient
// positivity, incompatible initial/boundary data, ...).
struct ValidationError : Error {
    using Error::Error;
};

// Elimination hit a zero pivot; `row` is 0-based.
struct SingularMatrixError : Error {
    SingularMatrixError(const std::string& what, int row_)
        : Error(what), row(row_) {}
    int row;
};

// An iterative solver ran out of its iteration budget.
struct NonConvergenceError : Error {
    using Error::Error;
};

}  // namespace cdstab
