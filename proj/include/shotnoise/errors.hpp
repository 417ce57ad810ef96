#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace shotnoise {

// Base for every error raised by the library. Anything deriving from
// ValidationError is an input problem; IoError is an I/O problem.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ValidationError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

class ZeroConductanceError : public ValidationError {
public:
    ZeroConductanceError() : ValidationError("zero conductance: Fano factor undefined") {}
};

class NegativeConductanceError : public ValidationError {
public:
    explicit NegativeConductanceError(double g)
        : ValidationError("negative conductance: " + std::to_string(g)) {}
};

class CapacityExceededError : public ValidationError {
public:
    CapacityExceededError(double g, double capacity)
        : ValidationError("conductance " + std::to_string(g) + " G0 exceeds model capacity " +
                          std::to_string(capacity) + " G0") {}
};

class ParseError : public ValidationError {
public:
    ParseError(std::size_t line, const std::string& what)
        : ValidationError("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class GridMismatchError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class NonMonotoneStepError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class EmptyOverlapError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class InsufficientPointsError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

} // namespace shotnoise
