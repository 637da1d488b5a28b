#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ecbs {

/// Raised when a numerical parameter is outside its admissible domain.
class InvalidParameter : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// The computation itself broke down: a singular pivot or a non-finite state.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A direct solver met a zero (or numerically negligible) pivot.
class SingularSystem : public NumericalError {
public:
    SingularSystem(const std::string& what, std::size_t index)
        : NumericalError(what + " (pivot " + std::to_string(index) + ")"), index_(index) {}

    std::size_t index() const noexcept { return index_; }

private:
    std::size_t index_;
};

/// Experiment configuration rejected before any computation; `field()` names the offending key.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string field, const std::string& message)
        : std::runtime_error(field.empty() ? message : field + ": " + message), field_(std::move(field)) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

} // namespace ecbs
