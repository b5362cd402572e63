#pragma once

#include <stdexcept>
#include <string>

namespace dnls {

/// Invalid configuration or violated precondition. The CLI maps it to exit code 1.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

enum class SolverFailure {
    non_convergence,
    divergence,
    singular_jacobian,
    trivial_solution,
    collapse,
    bound_violation,
    ill_posed,
    eigensolver,
};

const char* to_string(SolverFailure kind);

/// Numerical failure. The CLI maps it to exit code 2.
class SolverError : public std::runtime_error {
public:
    SolverError(SolverFailure kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    SolverFailure kind() const noexcept { return kind_; }

private:
    SolverFailure kind_;
};

}  // namespace dnls
