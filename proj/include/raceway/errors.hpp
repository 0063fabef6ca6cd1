#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace raceway {

/// Failure category. The CLI maps each kind to a distinct exit code.
enum class ErrorKind {
    domain,       // argument outside the validity region of a formula
    config,       // malformed or inconsistent configuration / parameters
    scenario,     // unusable disturbance series
    controller,   // controller produced an invalid signal
    integration,  // ODE solver could not meet its tolerances
    model,        // non-finite model evaluation
    io,           // filesystem problem
    evaluation    // cost / KPI computation not defined for the input
};

inline constexpr std::string_view to_string(ErrorKind kind) noexcept
{
    switch (kind) {
    case ErrorKind::domain: return "domain";
    case ErrorKind::config: return "config";
    case ErrorKind::scenario: return "scenario";
    case ErrorKind::controller: return "controller";
    case ErrorKind::integration: return "integration";
    case ErrorKind::model: return "model";
    case ErrorKind::io: return "io";
    case ErrorKind::evaluation: return "evaluation";
    }
    return "unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + " error: " + what), kind_(kind), detail_(what)
    {
    }

    ErrorKind kind() const noexcept { return kind_; }
    /// Message without the category prefix.
    const std::string& detail() const noexcept { return detail_; }

private:
    ErrorKind kind_;
    std::string detail_;
};

/// Integration failure with the state at which the step size underflowed.
class IntegrationFailure : public Error {
public:
    IntegrationFailure(const std::string& what, std::vector<double> state)
        : Error(ErrorKind::integration, what), state_(std::move(state))
    {
    }

    const std::vector<double>& state() const noexcept { return state_; }

private:
    std::vector<double> state_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what)
{
    throw Error(kind, what);
}

} // namespace raceway
