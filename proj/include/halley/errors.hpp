#pragma once

#include <stdexcept>
#include <string>

namespace halley {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised for malformed inputs that violate an operation's precondition.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// Numerical failures. The CLI maps these to exit code 3.
class NumericError : public Error {
public:
    using Error::Error;
};

class NonConvergence : public NumericError {
public:
    using NumericError::NumericError;
};

class NotNormalized : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

class DegenerateMap : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

class Indeterminate : public NumericError {
public:
    using NumericError::NumericError;
};

class NotFixed : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

class PropositionMismatch : public NumericError {
public:
    using NumericError::NumericError;
};

class SeedUnlabeled : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

class WindowNotCentered : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

class ExcludedParameter : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

class PoleAtTwenty : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

class InterpolationInconsistent : public NumericError {
public:
    using NumericError::NumericError;
};

class NoCycle : public NumericError {
public:
    using NumericError::NumericError;
};

class IOFailure : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace halley
