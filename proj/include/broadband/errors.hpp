#pragma once

#include <stdexcept>
#include <string>

namespace broadband {

/// Argument outside the mathematical domain of a function (negative entropy
/// argument, unphysical Gaussian state, wrong noise model for a closed form).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Floating-point breakdown that should not happen for valid inputs.
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An iterative solver ran out of budget or lost its bracket.
class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid user configuration (CLI flags, config file, channel parameters).
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// An output file or directory could not be written.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace broadband
