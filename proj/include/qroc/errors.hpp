#ifndef QROC_ERRORS_HPP
#define QROC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qroc {

// Base class for all library errors. The CLI maps subclasses to exit codes.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Input validation failures (CLI exit code 2).
class ValidationError : public Error {
public:
    using Error::Error;
};

class NonHermitianInput : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class NotPositiveSemidefinite : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class TraceNotOne : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class DimensionMismatch : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class ParameterOutOfRange : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class DegenerateParameter : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class RateOutOfRange : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class Unphysical : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class AsymmetricCovariance : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class MalformedInput : public ValidationError {
public:
    using ValidationError::ValidationError;
};

// Capability / singularity failures (CLI exit code 3).
class CapabilityError : public Error {
public:
    using Error::Error;
};

class SingularGaussianState : public CapabilityError {
public:
    using CapabilityError::CapabilityError;
};

class CutoffTooSmall : public CapabilityError {
public:
    using CapabilityError::CapabilityError;
};

class UnsupportedInput : public CapabilityError {
public:
    using CapabilityError::CapabilityError;
};

// Internal numerical failures (CLI exit code 4).
class NumericalError : public Error {
public:
    using Error::Error;
};

class IllConditioned : public NumericalError {
public:
    using NumericalError::NumericalError;
};

}  // namespace qroc

#endif
