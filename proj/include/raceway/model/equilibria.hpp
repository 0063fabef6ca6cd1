#pragma once

#include <cmath>
#include <string>

#include "raceway/model/parameters.hpp"
#include "raceway/model/types.hpp"

namespace raceway {

inline constexpr double kKelvinOffset = 273.15;
inline constexpr double kTempValidMin = -10.0;
inline constexpr double kTempValidMax = 60.0;

namespace detail {

inline void check_temperature_window(double temp)
{
    if (!(temp >= kTempValidMin && temp <= kTempValidMax))
        fail(ErrorKind::domain, "temperature " + std::to_string(temp) +
                                    " degC outside the equilibrium validity window [-10, 60]");
}

inline double vant_hoff(double ref, double enthalpy, double gas_constant, double temp_k, double t_ref)
{
    return ref * std::exp(-enthalpy / gas_constant * (1.0 / temp_k - 1.0 / t_ref));
}

} // namespace detail

struct DissociationConstants {
    double k1 = 0.0;
    double k2 = 0.0;
    double kw = 0.0;
};

/// K1, K2, KW at `temp` [°C], returned in mol·m⁻³ (KW in mol²·m⁻⁶).
inline DissociationConstants dissociation_constants(double temp, const ModelParameters& p)
{
    detail::check_temperature_window(temp);
    const auto& e = p.eng;
    const double tk = temp + kKelvinOffset;
    return {detail::vant_hoff(e.k1_ref(), e.dh_k1, e.gas_constant, tk, e.t_ref),
            detail::vant_hoff(e.k2_ref(), e.dh_k2, e.gas_constant, tk, e.t_ref),
            detail::vant_hoff(e.kw_ref(), e.dh_kw, e.gas_constant, tk, e.t_ref)};
}

struct HenryEquilibria {
    double kh_o2 = 0.0;
    double kh_co2 = 0.0;
    double x_o2_eq = 0.0;
    double co2_eq = 0.0;
    double co2_iny = 0.0;
};

/// Henry constants and the three gas-liquid equilibrium concentrations.
inline HenryEquilibria henry_equilibria(double temp, const ModelParameters& p)
{
    detail::check_temperature_window(temp);
    const auto& e = p.eng;
    const double inv = 1.0 / (temp + kKelvinOffset) - 1.0 / e.t_ref;
    HenryEquilibria out;
    out.kh_o2 = e.kh_ref_o2 * std::exp(e.henry_factor_o2 * inv);
    out.kh_co2 = e.kh_ref_co2 * std::exp(e.henry_factor_co2 * inv);
    out.x_o2_eq = out.kh_o2 * e.p_atm * e.y_o2;
    out.co2_eq = out.kh_co2 * e.p_atm * e.y_co2;
    out.co2_iny = out.kh_co2 * e.p_atm * e.y_pure_co2;
    return out;
}

inline EquilibriumSet equilibria(double temp, const ModelParameters& p)
{
    const auto k = dissociation_constants(temp, p);
    const auto hy = henry_equilibria(temp, p);
    return {k.k1, k.k2, k.kw, hy.kh_o2, hy.kh_co2, hy.x_o2_eq, hy.co2_eq, hy.co2_iny};
}

} // namespace raceway
