#pragma once

#include <stdexcept>
#include <string>

namespace bihar {

// Invalid inputs: bad dimension, subcritical exponent, precondition violations.
// The CLI maps this to exit code 2.
class domain_error : public std::invalid_argument {
public:
    explicit domain_error(const std::string& what) : std::invalid_argument(what) {}
};

// Numerical failures: bracketing failed, step size underflow, event not found.
// The CLI maps this (and any other runtime failure) to exit code 3.
class numerical_error : public std::runtime_error {
public:
    explicit numerical_error(const std::string& what) : std::runtime_error(what) {}
};

// A diagnostic was requested on data it does not apply to, e.g. an oscillation
// report for a trajectory that never comes near the fixed point.
class not_applicable_error : public numerical_error {
public:
    explicit not_applicable_error(const std::string& what) : numerical_error(what) {}
};

} // namespace bihar
