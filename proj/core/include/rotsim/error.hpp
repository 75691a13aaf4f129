#pragma once

#include <stdexcept>
#include <string>

namespace rotsim {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid arguments or configuration (bad M, angle out of range, ...).
class ConfigError : public Error {
public:
    using Error::Error;
};

/// A set enumeration would exceed the desk-scale resource guard.
class SizeError : public Error {
public:
    using Error::Error;
};

/// Training outputs whose per-symbol intervals do not intersect.
class InfeasibleOutputs : public Error {
public:
    using Error::Error;
};

/// Too few error events to support the requested statistic.
class InsufficientStatistics : public Error {
public:
    using Error::Error;
};

}  // namespace rotsim
