#pragma once

#include <stdexcept>
#include <string>

namespace mleap {

/// Base of every error raised by the library. Each subclass maps onto one
/// process exit code of the command-line tool.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
    virtual int exit_code() const noexcept { return 1; }
};

/// Invalid argument or configuration (bad sizes, infeasible requests).
class ParameterError : public Error {
public:
    using Error::Error;
    int exit_code() const noexcept override { return 2; }
};

/// Malformed input text; carries the 1-based line number of the offence.
class ParseError : public ParameterError {
public:
    ParseError(std::size_t line, const std::string& what)
        : ParameterError("line " + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Problem size exceeds a resource guard.
class CapacityError : public Error {
public:
    using Error::Error;
    int exit_code() const noexcept override { return 3; }
};

/// A randomized construction gave up after its attempt limit.
class RetryExhaustedError : public Error {
public:
    using Error::Error;
    int exit_code() const noexcept override { return 2; }
};

/// No depth step preserved the reference quasi-optimum.
class NoViableStepError : public Error {
public:
    using Error::Error;
    int exit_code() const noexcept override { return 2; }
};

class IoError : public Error {
public:
    using Error::Error;
    int exit_code() const noexcept override { return 4; }
};

/// Recomputed aggregates disagree with the stored ones.
class VerificationError : public Error {
public:
    using Error::Error;
    int exit_code() const noexcept override { return 5; }
};

}  // namespace mleap
