#pragma once

#include <stdexcept>
#include <string>

namespace fwm {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Argument outside the documented domain of an operation.
class DomainError : public Error {
public:
    using Error::Error;
};

class UnknownLevelError : public Error {
public:
    using Error::Error;
};

/// D1 line requested with |Fe - Fg| > 1.
class SelectionRuleError : public Error {
public:
    using Error::Error;
};

/// Squeezing target below the loss floor; min_achievable() is the floor as a linear noise ratio.
class UnreachableTargetError : public Error {
public:
    UnreachableTargetError(const std::string& what, double min_achievable)
        : Error(what), min_achievable_(min_achievable) {}

    double min_achievable() const noexcept { return min_achievable_; }

private:
    double min_achievable_;
};

/// Malformed config or constants text; carries the offending line (1-based, 0 when not line-bound).
class ConfigError : public Error {
public:
    ConfigError(const std::string& what, int line = 0) : Error(what), line_(line) {}

    int line() const noexcept { return line_; }

private:
    int line_;
};

}  // namespace fwm
