#pragma once

#include <stdexcept>
#include <string>

namespace udwf {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation (z = 0, a <= 0, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// An evaluator could not reach its accuracy target.
class AccuracyError : public Error {
public:
    using Error::Error;
};

/// A series, continued fraction or adaptive quadrature did not converge.
class ConvergenceError : public Error {
public:
    using Error::Error;
};

/// Second-order perturbation theory no longer applies: sigma * lambda^2 * (R- + R+) >= 1.
class PerturbativityError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(const std::string& what, int line)
        : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

    int line() const noexcept { return line_; }

private:
    int line_;
};

class UnknownParameterError : public Error {
public:
    explicit UnknownParameterError(const std::string& key)
        : Error("unknown parameter '" + key + "'"), key_(key) {}

    const std::string& key() const noexcept { return key_; }

private:
    std::string key_;
};

}  // namespace udwf
