#pragma once

#include <stdexcept>
#include <string>

namespace qgcl {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
public:
    using Error::Error;
};

class ShapeError : public Error {
public:
    using Error::Error;
};

class UnknownVariableError : public Error {
public:
    using Error::Error;
};

class VariableScopeError : public Error {
public:
    using Error::Error;
};

class DomainClashError : public Error {
public:
    using Error::Error;
};

class GuardBasisError : public Error {
public:
    using Error::Error;
};

class AlphaNormalizationError : public Error {
public:
    using Error::Error;
};

class StateError : public Error {
public:
    using Error::Error;
};

class ProbabilityError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(const std::string& message, int line, int column)
        : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
          line_(line), column_(column) {}

    int line() const noexcept { return line_; }
    int column() const noexcept { return column_; }

private:
    int line_;
    int column_;
};

} // namespace qgcl
