#pragma once

#include <stdexcept>
#include <string>

namespace plume {

// Base class for all toolkit errors. Subclasses map to CLI exit codes:
// ConfigError -> 2, DataError -> 3, NumericalError -> 4.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

class DataError : public Error {
public:
    using Error::Error;
};

class NumericalError : public Error {
public:
    using Error::Error;
};

// Raised when a forward rollout produces non-finite values.
class RolloutBlowup : public NumericalError {
public:
    RolloutBlowup(int frame, int substep)
        : NumericalError("rollout blow-up at frame " + std::to_string(frame) +
                         ", substep " + std::to_string(substep)),
          frame(frame),
          substep(substep) {}

    int frame;
    int substep;
};

}  // namespace plume
