#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "raceway/errors.hpp"
#include "raceway/model/biology.hpp"
#include "raceway/model/types.hpp"

namespace raceway {

/// Meteorological disturbance series on a uniform grid plus the run's initial state.
/// Sample i holds over [time_s[i], time_s[i] + period).
struct Scenario {
    double period = 0.0;        ///< [s]
    double start_offset = 0.0;  ///< seconds after local midnight at time 0
    std::vector<double> time_s;
    std::vector<double> rad_global;
    std::vector<double> rad_par;
    std::vector<double> temp_ext;
    std::vector<double> rh;
    std::vector<double> wind;
    StateVector initial;

    std::size_t size() const noexcept { return time_s.size(); }
    double coverage() const noexcept { return static_cast<double>(size()) * period; }

    /// Sample-and-hold index for simulation time `t`.
    std::size_t sample_index(double t) const noexcept
    {
        const double rel = (t - time_s.front()) / period;
        const double k = std::floor(rel + 1e-9);
        if (k <= 0.0)
            return 0;
        return std::min(static_cast<std::size_t>(k), size() - 1);
    }

    MeteoSample sample(std::size_t i) const
    {
        return {rad_global[i], rad_par[i], temp_ext[i], rh[i], wind[i]};
    }

    MeteoSample at(double t) const { return sample(sample_index(t)); }

    /// Fills rad_par from rad_global where the column was absent.
    void derive_par()
    {
        rad_par.resize(rad_global.size());
        for (std::size_t i = 0; i < rad_global.size(); ++i)
            rad_par[i] = par_from_global(rad_global[i]);
    }

    void validate(double horizon) const
    {
        const std::size_t n = size();
        if (n == 0)
            fail(ErrorKind::scenario, "scenario has no samples");
        if (rad_global.size() != n || rad_par.size() != n || temp_ext.size() != n || rh.size() != n ||
            wind.size() != n)
            fail(ErrorKind::scenario, "scenario columns differ in length");
        if (!(period > 0.0) || !std::isfinite(period))
            fail(ErrorKind::scenario, "scenario period must be positive");
        if (!std::isfinite(start_offset))
            fail(ErrorKind::scenario, "start offset must be finite");
        for (std::size_t i = 0; i < n; ++i) {
            const auto m = sample(i);
            const std::string at = " at row " + std::to_string(i);
            if (!std::isfinite(time_s[i]) || !m.finite())
                fail(ErrorKind::scenario, "non-finite value" + at);
            if (i > 0 && std::abs(time_s[i] - time_s[i - 1] - period) > 1e-9 * std::max(1.0, period))
                fail(ErrorKind::scenario, "time_s is not uniformly spaced" + at);
            if (m.rad_global < 0 || m.rad_par < 0)
                fail(ErrorKind::scenario, "negative irradiance" + at);
            if (m.rh < 0 || m.rh > 100)
                fail(ErrorKind::scenario, "relative humidity outside [0, 100]" + at);
            if (m.wind < 0)
                fail(ErrorKind::scenario, "negative wind speed" + at);
        }
        if (coverage() + 1e-9 < horizon)
            fail(ErrorKind::scenario, "scenario covers " + std::to_string(coverage()) +
                                          " s, shorter than the horizon of " + std::to_string(horizon) + " s");
    }
};

/// Physical actuator limits and the fixed pump rate used by binary harvest/dilution commands.
struct ActuatorLimits {
    double q_co2_max = 3.3333333333333335e-4; ///< 20 L·min⁻¹ [m³·s⁻¹]
    double q_air_max = 8.3333333333333332e-3; ///< 500 L·min⁻¹ [m³·s⁻¹]
    double q_w_max = 5.0e-3;                  ///< 5 L·s⁻¹ [m³·s⁻¹]
    double t_in_min = 20.0;                   ///< [°C]
    double t_in_max = 50.0;                   ///< [°C]
    double pump_rate = 1.0e-3;                ///< [m³·s⁻¹]

    void validate() const
    {
        if (!(q_co2_max > 0 && q_air_max > 0 && q_w_max > 0 && pump_rate > 0))
            fail(ErrorKind::config, "actuator maxima must be positive");
        if (!(t_in_min < t_in_max))
            fail(ErrorKind::config, "need t_in_min < t_in_max");
    }
};

} // namespace raceway
