#pragma once

#include <stdexcept>
#include <string>

namespace wpt {

// Numerical failure: quadrature non-convergence, singular or
// ill-conditioned mesh matrix, vanishing closed-form denominator.
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

// Configuration file problem. `line` is 1-based; 0 when not tied to a line.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what, int line = 0)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
          line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

}  // namespace wpt
