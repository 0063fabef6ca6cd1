#pragma once

#include <algorithm>
#include <cmath>

#include "raceway/errors.hpp"

namespace raceway {

/// Relay with hysteresis: switches on above `upper`, off below `lower`, holds in between.
inline bool onoff_hysteresis(double y, double upper, double lower, bool was_active)
{
    if (!(lower < upper))
        fail(ErrorKind::config, "hysteresis needs lower < upper");
    if (y > upper)
        return true;
    if (y < lower)
        return false;
    return was_active;
}

struct PiGains {
    double k_c = 0.0;
    double t_i = 0.0; ///< [s]
};

/// SIMC rule for a first-order-plus-dead-time model (gain, time constant, dead time)
/// and a chosen closed-loop time constant.
inline PiGains simc_tune(double k_gain, double tau, double theta, double tau_c)
{
    if (k_gain == 0.0 || !std::isfinite(k_gain))
        fail(ErrorKind::config, "SIMC needs a finite non-zero process gain");
    if (!(tau > 0.0) || !(theta >= 0.0) || !(tau_c > 0.0))
        fail(ErrorKind::config, "SIMC needs tau > 0, theta >= 0, tau_c > 0");
    return {tau / (k_gain * (tau_c + theta)), std::min(tau, 4.0 * (tau_c + theta))};
}

struct PiOutput {
    double u = 0.0;
    double integral = 0.0;
};

/// Discrete PI with conditional anti-windup. The integral accumulates k_c/t_i·e·dt
/// and is frozen whenever the update would push an already saturated output further out.
inline PiOutput pi_step(double error, double integral, double k_c, double t_i, double dt, double u_min,
                        double u_max)
{
    if (!(t_i > 0.0) || !(dt > 0.0) || !(u_min < u_max))
        fail(ErrorKind::config, "pi_step needs t_i > 0, dt > 0 and u_min < u_max");
    const double increment = k_c / t_i * error * dt;
    const double candidate = integral + increment;
    const double u_raw = k_c * error + candidate;
    double next = candidate;
    if ((u_raw > u_max && increment > 0.0) || (u_raw < u_min && increment < 0.0))
        next = integral;
    const double u = std::clamp(k_c * error + next, u_min, u_max);
    return {u, next};
}

/// Same law without anti-windup; kept as a comparison baseline.
inline PiOutput pi_step_naive(double error, double integral, double k_c, double t_i, double dt, double u_min,
                              double u_max)
{
    const double next = integral + k_c / t_i * error * dt;
    return {std::clamp(k_c * error + next, u_min, u_max), next};
}

} // namespace raceway
