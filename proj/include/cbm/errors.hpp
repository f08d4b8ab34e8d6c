#pragma once

#include <stdexcept>
#include <string>

namespace cbm {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Adaptive quadrature ran out of subdivisions before meeting its tolerance.
class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An infinite series could not be truncated within its configured cap
/// (Poisson shock-count sum, inspection-count sum, simulation horizon).
class TruncationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Every optimizer start failed to produce a finite objective.
class OptimizationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Configuration could not be parsed or violates an invariant.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace cbm
