#pragma once

#include <algorithm>
#include <cmath>
#include <optional>

#include "raceway/model/equilibria.hpp"
#include "raceway/model/parameters.hpp"
#include "raceway/model/types.hpp"

namespace raceway {

/// Saturation vapour pressure over water [Pa] (Magnus form).
inline double saturation_vapour_pressure(double temp)
{
    return 610.94 * std::exp(17.625 * temp / (temp + 243.04));
}

/// Water vapour mass concentration [kg·m⁻³] at `temp` and relative humidity `rh` [%].
inline double vapour_concentration(double temp, double rh)
{
    constexpr double molar_mass_water = 0.018015; // kg·mol⁻¹
    constexpr double gas_constant = 8.314462618;
    return (rh / 100.0) * saturation_vapour_pressure(temp) * molar_mass_water /
           (gas_constant * (temp + kKelvinOffset));
}

/// Latent heat of vaporisation [J·kg⁻¹].
inline double latent_heat(double temp) { return 2.501e6 - 2361.0 * temp; }

/// Effective clear-sky temperature [K] from ambient temperature and humidity.
inline double sky_temperature(double temp_ext, double rh, const ModelParameters& p)
{
    const double ta = temp_ext + kKelvinOffset;
    const double ea_hpa = (rh / 100.0) * saturation_vapour_pressure(temp_ext) / 100.0;
    const double emis = std::clamp(p.thermal.sky_emissivity_a +
                                       p.thermal.sky_emissivity_b * ea_hpa *
                                           std::exp(p.thermal.sky_emissivity_c / ta),
                                   0.0, 1.0);
    return std::pow(emis, 0.25) * ta;
}

struct HeatExchangerState {
    double c_w = 0.0;   ///< [W·K⁻¹]
    double eff = 0.0;   ///< NTU effectiveness
    double q_hx = 0.0;  ///< [W]
    double t_out = 0.0; ///< coil outlet [°C]
};

inline HeatExchangerState heat_exchanger(double q_w, double t_in, double temp, const ModelParameters& p)
{
    const auto& th = p.thermal;
    HeatExchangerState hx;
    hx.c_w = th.water_density * th.water_heat_capacity * q_w;
    hx.eff = -std::expm1(-th.hx_ua / std::max(hx.c_w, th.hx_regularization));
    hx.q_hx = hx.c_w * (t_in - temp) * hx.eff;
    hx.t_out = hx.c_w > 0.0 ? t_in - hx.q_hx / hx.c_w : t_in;
    return hx;
}

/// All heat flows on the culture. `sky_temp_k` overrides the clear-sky correlation.
inline ThermalFluxes thermal_fluxes(const StateVector& s, const MeteoSample& m, const ActuatorInputs& act,
                                    const ReactorGeometry& g, const ModelParameters& p,
                                    std::optional<double> sky_temp_k = std::nullopt)
{
    if (!m.finite())
        fail(ErrorKind::model, "non-finite meteorology");
    const auto& th = p.thermal;
    const double area = g.area();
    const double t_k = s.temp + kKelvinOffset;
    const double rho_cp = th.water_density * th.water_heat_capacity;

    ThermalFluxes q;
    q.q_irrad = th.alpha_rad * area * m.rad_global;

    const double t_sky = sky_temp_k ? *sky_temp_k : sky_temperature(m.temp_ext, m.rh, p);
    q.q_rad = th.stefan_boltzmann * th.emissivity_water * area *
              (t_sky * t_sky * t_sky * t_sky - t_k * t_k * t_k * t_k);

    const double r_series = th.liner_thickness / th.liner_conductivity +
                            th.ground_thickness / th.ground_conductivity;
    q.q_cond = area / r_series * (th.ground_temp - s.temp);

    const double k_m = th.evap_mass_transfer * (1.0 + th.evap_wind_coeff * m.wind);
    const double c_s = vapour_concentration(s.temp, 100.0);
    const double c_a = vapour_concentration(m.temp_ext, m.rh);
    q.m_e_dot = k_m * area * std::max(c_s - c_a, 0.0);
    q.v_e_dot = q.m_e_dot / th.water_density;
    q.q_evap = -latent_heat(s.temp) * q.m_e_dot;

    q.q_conv = th.convection_coeff * area * (m.temp_ext - s.temp);
    q.q_dil = rho_cp * act.q_d * m.temp_ext;
    q.q_harv = -rho_cp * act.q_h * s.temp;
    q.q_mix = th.mixing_power;
    q.q_hx = heat_exchanger(act.q_w, act.t_in_hx, s.temp, p).q_hx;

    q.q_sum = q.q_irrad + q.q_rad + q.q_cond + q.q_evap + q.q_conv + q.q_dil + q.q_harv + q.q_mix +
              q.q_hx;
    return q;
}

/// Energy balance with the volume-change correction.
inline double temperature_derivative(double q_sum, double temp, double vol, double vol_dot,
                                     const ModelParameters& p)
{
    const double rho_cp = p.thermal.water_density * p.thermal.water_heat_capacity;
    return q_sum / (rho_cp * vol) - temp / vol * vol_dot;
}

} // namespace raceway
