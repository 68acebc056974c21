#pragma once

#include <stdexcept>
#include <string>

namespace evistream {

// Base class for everything this library throws on its own behalf.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// --- input-shape errors: the file/arguments could not be understood at all ---

class IoError : public Error {
public:
    using Error::Error;
};

// Carries a 1-based line number when the problem is tied to a stream line,
// -1 otherwise.
class ParseError : public Error {
public:
    explicit ParseError(const std::string& what, long line = -1)
        : Error(line >= 0 ? "line " + std::to_string(line) + ": " + what : what),
          line_(line) {}
    long line() const { return line_; }

private:
    long line_;
};

// --- content/domain errors: well-formed input that violates a contract ---

class EmptyFrame : public Error {
public:
    using Error::Error;
};

class DuplicateLabel : public Error {
public:
    using Error::Error;
};

class InvalidLabel : public Error {
public:
    using Error::Error;
};

class FrameTooLarge : public Error {
public:
    using Error::Error;
};

class FrameMismatch : public Error {
public:
    using Error::Error;
};

class UnknownLabel : public Error {
public:
    using Error::Error;
};

class InvalidBpa : public Error {
public:
    using Error::Error;
};

class NotABeliefFunction : public Error {
public:
    using Error::Error;
};

class ZeroBeliefEvent : public Error {
public:
    using Error::Error;
};

class ConstraintViolation : public Error {
public:
    using Error::Error;
};

class EmptyEventSet : public Error {
public:
    using Error::Error;
};

class InvalidGamma : public Error {
public:
    using Error::Error;
};

class NonMonotoneIndex : public Error {
public:
    using Error::Error;
};

} // namespace evistream
