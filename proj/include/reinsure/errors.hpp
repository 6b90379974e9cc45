#pragma once

#include <stdexcept>
#include <string>

namespace reinsure {

/// Input outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A tail integral that does not converge.
class DivergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Operation not defined for the given inputs (e.g. an assumption the
/// derivation relies on is violated).
class UnsupportedError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace reinsure
