#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace tricell {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Operand shapes do not agree.
class DimensionMismatch : public Error {
public:
    using Error::Error;
};

/// A cell name, index tuple or family tag outside the catalog.
class UnknownCell : public Error {
public:
    using Error::Error;
};

/// Moduli or support points violate a family's open or sign conditions.
class ConstraintError : public Error {
public:
    using Error::Error;
};

/// Malformed data file. Carries the 1-based line number when known.
class ParseError : public Error {
public:
    ParseError(std::string source, std::size_t line, const std::string& what)
        : Error(source + ":" + std::to_string(line) + ": " + what),
          source_(std::move(source)),
          line_(line) {}

    const std::string& source() const noexcept { return source_; }
    std::size_t line() const noexcept { return line_; }

private:
    std::string source_;
    std::size_t line_;
};

/// An operation that requires a validated complex was called on one with d^2 != 0.
class NotValidated : public Error {
public:
    using Error::Error;
};

/// An errata entry whose location is absent from the data it targets.
class DanglingErrata : public Error {
public:
    using Error::Error;
};

/// A required data file or directory is missing or unreadable.
class MissingData : public Error {
public:
    using Error::Error;
};

}  // namespace tricell
