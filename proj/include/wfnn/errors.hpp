#pragma once

#include <stdexcept>
#include <string>

namespace wfnn {

// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A sampler or forward pass received a non-finite coordinate.
struct InvalidSample : Error {
    using Error::Error;
};

// Division by a value too close to zero in jet/tape arithmetic.
struct DegenerateDivision : Error {
    using Error::Error;
};

// A non-finite value or adjoint was produced during the forward/backward pass.
struct NonFiniteGradient : Error {
    using Error::Error;
};

// Spherical-harmonic degree outside the supported closed-form range.
struct UnsupportedDegree : Error {
    using Error::Error;
};

// Checkpoint file is malformed, truncated or has the wrong magic/version.
struct CorruptCheckpoint : Error {
    using Error::Error;
};

// The induced metric is degenerate (EG - F^2 below threshold) where a
// non-degenerate metric is required.
struct DegenerateMetric : Error {
    using Error::Error;
};

// Invalid configuration value or combination.
struct ConfigError : Error {
    using Error::Error;
};

// Every sample in a batch had a degenerate metric.
struct AllDegenerate : Error {
    using Error::Error;
};

} // namespace wfnn
