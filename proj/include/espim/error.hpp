#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace espim {

/// Base of every error thrown by the toolkit.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An input lies outside the domain of a model formula. `field()` names the
/// offending parameter so callers can report it.
class DomainError : public Error {
public:
    DomainError(std::string field, const std::string& what)
        : Error(field + ": " + what), field_(std::move(field)) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

class DegenerateRegressionError : public Error {
public:
    using Error::Error;
};

class EmptyInputError : public Error {
public:
    using Error::Error;
};

class InsufficientDataError : public Error {
public:
    using Error::Error;
};

class ZeroVarianceError : public Error {
public:
    using Error::Error;
};

class UndefinedCorrelationError : public Error {
public:
    using Error::Error;
};

class OrderingError : public Error {
public:
    using Error::Error;
};

class MissingKeyError : public Error {
public:
    using Error::Error;
};

class InfeasibleError : public Error {
public:
    using Error::Error;
};

class LengthMismatchError : public Error {
public:
    using Error::Error;
};

struct Violation {
    std::string path;
    std::string message;

    bool operator==(const Violation&) const = default;
};

/// Raised by the session-log parser. The three kinds are distinguishable so
/// that callers (CLI exit codes, HTTP status) can map them separately.
class SessionError : public Error {
public:
    enum class Kind { Syntax, Schema, Invariant };

    SessionError(Kind kind, std::vector<Violation> violations);

    Kind kind() const noexcept { return kind_; }
    const std::vector<Violation>& violations() const noexcept { return violations_; }

private:
    Kind kind_;
    std::vector<Violation> violations_;
};

} // namespace espim
