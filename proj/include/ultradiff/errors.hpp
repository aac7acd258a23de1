#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ultradiff {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Raised whenever the available precision cannot certify a result. Callers
// can retry with more input precision.
class PrecisionError : public Error {
public:
    using Error::Error;
};

class ZeroDivisorToPrecision : public PrecisionError {
public:
    using PrecisionError::PrecisionError;
};

class UndecidableAtPrecision : public PrecisionError {
public:
    using PrecisionError::PrecisionError;
};

class InsufficientPrecision : public PrecisionError {
public:
    using PrecisionError::PrecisionError;
};

// Rejection sampling gave up; almost always a ball too small for the
// working precision.
class SamplerExhausted : public PrecisionError {
public:
    using PrecisionError::PrecisionError;
};

class DomainError : public Error {
public:
    using Error::Error;
};

class ShapeError : public Error {
public:
    using Error::Error;
};

class ArityError : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

class SyntaxError : public Error {
public:
    SyntaxError(std::size_t position, std::string expected, const std::string& what)
        : Error(what + " at position " + std::to_string(position) + " (expected " + expected + ")"),
          position_(position),
          expected_(std::move(expected)) {}

    std::size_t position() const noexcept { return position_; }
    const std::string& expected() const noexcept { return expected_; }

private:
    std::size_t position_;
    std::string expected_;
};

} // namespace ultradiff
