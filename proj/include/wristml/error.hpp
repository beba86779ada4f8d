#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace wristml {

// Base class for every error raised by the library. The CLI maps each
// subclass onto a fixed exit code (see tools/commands.hpp).
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed text input (model files, CSV, config documents).
class ParseError : public Error {
public:
    ParseError(std::string what, std::size_t line)
        : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

// Not enough samples / intervals / windows to compute a quantity.
class InsufficientDataError : public Error {
public:
    using Error::Error;
};

// Vector or topology dimensions disagree.
class ShapeError : public Error {
public:
    using Error::Error;
};

// Value outside the representable range of a fixed-point format.
class RangeError : public Error {
public:
    using Error::Error;
};

// Unknown platform / scenario / condition names, invalid configuration.
class ConfigError : public Error {
public:
    using Error::Error;
};

// Calibration data that does not support the model being fitted.
class CalibrationError : public Error {
public:
    using Error::Error;
};

class DivergenceError : public Error {
public:
    DivergenceError(std::size_t epoch)
        : Error("training diverged (non-finite loss) at epoch " + std::to_string(epoch)), epoch_(epoch) {}

    std::size_t epoch() const noexcept { return epoch_; }

private:
    std::size_t epoch_;
};

}  // namespace wristml
