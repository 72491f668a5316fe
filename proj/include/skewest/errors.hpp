// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>

namespace skewest {

// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Invalid clock/schedule/experiment parameters (violated type invariants).
class ConfigError : public Error {
public:
    using Error::Error;
};

// Index or gap outside its admissible range, or empty input arrays.
class RangeError : public Error {
public:
    using Error::Error;
};

// Mathematical precondition failed (e.g. negative discriminant).
class DomainError : public Error {
public:
    using Error::Error;
};

// Estimator denominator vanished; the input carries no usable signal.
class DegenerateInputError : public Error {
public:
    using Error::Error;
};

// Malformed input file.
class ParseError : public Error {
public:
    using Error::Error;
};

}  // namespace skewest
