#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace hawkes {

/// Invalid model parameters, options or configuration files.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Event data that violates the point-process invariants (ordering, window, marks).
/// Carries the 1-based input line when the data came from a file.
class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& what, std::optional<std::size_t> line = std::nullopt)
        : std::runtime_error(line ? "line " + std::to_string(*line) + ": " + what : what),
          line_(line) {}

    [[nodiscard]] std::optional<std::size_t> line() const noexcept { return line_; }

private:
    std::optional<std::size_t> line_;
};

/// Numerical breakdown: thinning bound violated, optimizer diverged, solver failed.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace hawkes
