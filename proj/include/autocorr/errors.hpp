#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace autocorr {

// Caller broke a documented precondition (bad parameter, unaligned grid, ...).
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Argument outside the mathematical domain of an operation (|t| > 1, p <= 1, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// A numeric invariant that must hold for every valid input did not hold.
// Seeing one of these means a numerics bug, not bad input.
class InvariantViolation : public std::runtime_error {
public:
    InvariantViolation(std::string invariant, const std::string& detail)
        : std::runtime_error(invariant + ": " + detail), invariant_(std::move(invariant)) {}

    const std::string& invariant() const noexcept { return invariant_; }

private:
    std::string invariant_;
};

}  // namespace autocorr
