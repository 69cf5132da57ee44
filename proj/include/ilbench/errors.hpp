#pragma once

#include <stdexcept>
#include <string>

namespace ilbench {

/// A model or policy was constructed or combined with mismatched dimensions,
/// invalid probabilities, or an inconsistent configuration.
struct config_error : std::runtime_error {
    explicit config_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// A caller passed an argument outside the documented domain.
struct input_error : std::invalid_argument {
    explicit input_error(const std::string& msg) : std::invalid_argument(msg) {}
};

/// An enumeration request exceeded the exactness guard.
struct size_error : std::runtime_error {
    explicit size_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Observed expert data is inconsistent with every member of the policy
/// class, violating deterministic realizability.
struct realizability_error : std::runtime_error {
    explicit realizability_error(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace ilbench
