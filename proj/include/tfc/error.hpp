#pragma once

#include <stdexcept>
#include <string>

namespace tfc {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidSplitError : public Error {
public:
    using Error::Error;
};

/// A regularization gap under the `error` policy. Carries the first missing slot.
class GapError : public Error {
public:
    GapError(const std::string& what, long long missing_timestamp)
        : Error(what), missing_timestamp_(missing_timestamp) {}
    long long missing_timestamp() const noexcept { return missing_timestamp_; }

private:
    long long missing_timestamp_;
};

/// Two source points snapped onto the same grid slot.
class AmbiguityError : public Error {
public:
    using Error::Error;
};

class InsufficientDataError : public Error {
public:
    using Error::Error;
};

class SingularSystemError : public Error {
public:
    using Error::Error;
};

/// Wrong number of lag values handed to an autoregressive model.
class ArityError : public Error {
public:
    using Error::Error;
};

class DegenerateTargetError : public Error {
public:
    using Error::Error;
};

/// Malformed input record. `line()` is 1-based and counts the header row.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line) : Error(what), line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class EmptyDatasetError : public Error {
public:
    using Error::Error;
};

/// A value object was constructed with arguments violating its invariants.
class SpecError : public Error {
public:
    using Error::Error;
};

} // namespace tfc
