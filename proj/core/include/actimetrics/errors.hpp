#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace actimetrics {

/// Root of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid configuration or parameters. The CLI maps these to exit code 1.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Problems with the data itself. The CLI maps these to exit code 2.
class DataError : public Error {
public:
    using Error::Error;
};

class EpochTooShort : public ConfigError {
public:
    using ConfigError::ConfigError;
};

class InvalidCutoffs : public ConfigError {
public:
    using ConfigError::ConfigError;
};

class UnstableDesign : public Error {
public:
    using Error::Error;
};

class InapplicableMetric : public ConfigError {
public:
    using ConfigError::ConfigError;
};

class EmptySeries : public DataError {
public:
    using DataError::DataError;
};

class LengthMismatch : public DataError {
public:
    using DataError::DataError;
};

class InvalidKind : public DataError {
public:
    using DataError::DataError;
};

class RateMismatch : public DataError {
public:
    using DataError::DataError;
};

class MissingDataset : public DataError {
public:
    using DataError::DataError;
};

class RecordingTooShort : public DataError {
public:
    using DataError::DataError;
};

class DegenerateInput : public DataError {
public:
    using DataError::DataError;
};

class LabelMismatch : public DataError {
public:
    using DataError::DataError;
};

class SignalTooShort : public DataError {
public:
    using DataError::DataError;
};

class ValidationError : public DataError {
public:
    using DataError::DataError;
};

class MissingSampleRate : public DataError {
public:
    using DataError::DataError;
};

class BadMagic : public DataError {
public:
    using DataError::DataError;
};

class VersionUnsupported : public DataError {
public:
    using DataError::DataError;
};

class TruncatedPayload : public DataError {
public:
    using DataError::DataError;
};

/// CSV parse failure; line numbers are 1-based and count the header.
class ParseError : public DataError {
public:
    ParseError(std::size_t line, const std::string& what)
        : DataError("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

}  // namespace actimetrics
