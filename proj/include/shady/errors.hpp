#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace shady {

/// Base class of every domain error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public Error {
public:
    explicit ParseError(const std::string& what, std::size_t line = 0)
        : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class SingularMatrix : public Error {
public:
    SingularMatrix() : Error("matrix is singular") {}
    explicit SingularMatrix(const std::string& what) : Error(what) {}
};

class NotPositiveDefinite : public Error {
public:
    explicit NotPositiveDefinite(std::size_t pivot)
        : Error("non-positive pivot at index " + std::to_string(pivot)), pivot_(pivot) {}

    std::size_t pivot() const noexcept { return pivot_; }

private:
    std::size_t pivot_;
};

class VariableCountMismatch : public Error {
public:
    VariableCountMismatch(std::size_t expected, std::size_t got)
        : Error("variable count mismatch: expected " + std::to_string(expected) + ", got " +
                std::to_string(got)) {}
};

class DegenerateInput : public Error {
public:
    using Error::Error;
};

class DegeneratePair : public Error {
public:
    DegeneratePair() : Error("kernel direction lies in the image hyperplane (w^T u = 0)") {}
};

class NoCycleFound : public Error {
public:
    using Error::Error;
};

class DegenerateKernel : public Error {
public:
    using Error::Error;
};

class InvalidBound : public Error {
public:
    using Error::Error;
};

class DegreeOverflow : public Error {
public:
    using Error::Error;
};

class Unbounded : public Error {
public:
    using Error::Error;
};

class NumericalSupportMismatch : public Error {
public:
    using Error::Error;
};

}  // namespace shady
