#pragma once

#include <stdexcept>
#include <string>

namespace fracmc {

// Argument outside the domain of an operation (poles, invalid orders,
// empty branches, unknown names). The CLI maps these to a usage error.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Base for failures that happen while computing with valid arguments.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class OverflowError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

// Series or quadrature did not reach its stopping rule.
class ConvergenceError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

// A sampling loop hit its hard iteration cap.
class SamplerCapError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class NonFiniteError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

}  // namespace fracmc
