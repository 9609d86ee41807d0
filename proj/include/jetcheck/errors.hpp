#pragma once

#include <stdexcept>
#include <string>

namespace jetcheck {

// Input data is malformed or outside the documented domain of an operation.
struct invalid_input : std::invalid_argument {
    explicit invalid_input(const std::string& msg) : std::invalid_argument(msg) {}
};

// Input is well-formed but violates a precondition (e.g. the point is not in
// any proper stratum, or the surjectivity hypothesis fails).
struct precondition_error : std::runtime_error {
    explicit precondition_error(const std::string& msg) : std::runtime_error(msg) {}
};

// A polynomial representative does not carry coefficients up to the order an
// operation needs.
struct insufficient_degree : std::invalid_argument {
    explicit insufficient_degree(const std::string& msg) : std::invalid_argument(msg) {}
};

// The instance is valid mathematics but outside what this implementation can
// solve exactly (e.g. critical equations with no closed-form rational solve).
struct unsupported_instance : std::runtime_error {
    explicit unsupported_instance(const std::string& msg) : std::runtime_error(msg) {}
};

// An internal invariant that is supposed to be a theorem failed. Reaching
// this means a bug, not bad input.
struct invariant_violation : std::logic_error {
    explicit invariant_violation(const std::string& msg) : std::logic_error(msg) {}
};

// Exact integer arithmetic left the representable range of a fixed-width
// result field.
struct arithmetic_error : std::runtime_error {
    explicit arithmetic_error(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace jetcheck
