#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <string>

#include "raceway/errors.hpp"

namespace raceway {

inline constexpr std::size_t kStateSize = 7;

/// The seven dynamic states of the well-mixed raceway.
/// Concentrations are in mol·m⁻³ except biomass (g·m⁻³).
struct StateVector {
    double x_alg = 0.0; ///< biomass [g·m⁻³]
    double x_o2 = 0.0;  ///< dissolved oxygen [mol·m⁻³]
    double dic = 0.0;   ///< total inorganic carbon [mol·m⁻³]
    double cat = 0.0;   ///< strong cations [mol·m⁻³]
    double h = 0.0;     ///< protons [mol·m⁻³]
    double temp = 0.0;  ///< bulk temperature [°C]
    double vol = 0.0;   ///< culture volume [m³]

    std::array<double, kStateSize> to_array() const noexcept
    {
        return {x_alg, x_o2, dic, cat, h, temp, vol};
    }

    static StateVector from_array(const std::array<double, kStateSize>& a) noexcept
    {
        return {a[0], a[1], a[2], a[3], a[4], a[5], a[6]};
    }

    bool operator==(const StateVector&) const = default;
};

inline constexpr std::array<const char*, kStateSize> kStateNames{
    "x_alg", "x_o2", "dic", "cat", "h", "temp", "vol"};

/// Raceway layout. The culture surface is channel_count·width·channel_length.
struct ReactorGeometry {
    double channel_length = 0.0;       ///< L [m], per straight channel
    double channel_count = 0.0;        ///< straight channels
    double width = 0.0;                ///< W [m]
    double sump_radius = 0.0;          ///< [m]
    double sump_height = 0.0;          ///< [m]
    double paddlewheel_length = 0.0;   ///< L_pw [m]

    double area() const noexcept { return channel_count * width * channel_length; }
    double sump_area() const noexcept { return std::numbers::pi * sump_radius * sump_radius; }
    double sump_volume() const noexcept { return sump_area() * sump_height; }
    double volume_at_depth(double depth) const noexcept { return sump_volume() + area() * depth; }

    void validate() const
    {
        if (!(channel_length > 0 && channel_count > 0 && width > 0 && sump_radius > 0 &&
              sump_height > 0 && paddlewheel_length >= 0))
            fail(ErrorKind::config, "reactor geometry must have positive dimensions");
    }
};

/// One sample of the meteorological disturbances.
struct MeteoSample {
    double rad_global = 0.0; ///< [W·m⁻²]
    double rad_par = 0.0;    ///< [µmol·m⁻²·s⁻¹]
    double temp_ext = 0.0;   ///< [°C]
    double rh = 0.0;         ///< [%]
    double wind = 0.0;       ///< [m·s⁻¹]

    bool finite() const noexcept
    {
        return std::isfinite(rad_global) && std::isfinite(rad_par) && std::isfinite(temp_ext) &&
               std::isfinite(rh) && std::isfinite(wind);
    }
};

/// Physical inputs applied to the plant over one macro step.
struct ActuatorInputs {
    double q_co2 = 0.0;   ///< CO₂ gas [m³·s⁻¹]
    double q_air = 0.0;   ///< air [m³·s⁻¹]
    double q_d = 0.0;     ///< dilution inflow [m³·s⁻¹]
    double q_h = 0.0;     ///< harvest outflow [m³·s⁻¹]
    double q_w = 0.0;     ///< heat-exchanger water [m³·s⁻¹]
    double t_in_hx = 0.0; ///< heat-exchanger inlet [°C]
};

struct DerivedOutputs {
    double ph = 0.0;
    double do_pct = 0.0;   ///< [% saturation]
    double x_alg_gl = 0.0; ///< [g·L⁻¹]
    double depth = 0.0;    ///< [m]
};

struct CarbonateSpeciation {
    double co2 = 0.0;
    double hco3 = 0.0;
    double co3 = 0.0;
    double oh = 0.0;
    double delta = 0.0; ///< H² + H·K1 + K1·K2 [mol²·m⁻⁶]
};

struct RateBundle {
    double i_av = 0.0;    ///< depth-averaged PAR [µmol·m⁻²·s⁻¹]
    double mu_i = 0.0;
    double mu_t = 0.0;
    double mu_ph = 0.0;
    double mu_do = 0.0;
    double p_gross = 0.0; ///< [s⁻¹]
    double mu_g = 0.0;    ///< [s⁻¹]
    double m_resp = 0.0;  ///< [s⁻¹]
};

struct ThermalFluxes {
    double q_irrad = 0.0;
    double q_rad = 0.0;
    double q_cond = 0.0;
    double q_evap = 0.0;
    double q_conv = 0.0;
    double q_dil = 0.0;
    double q_harv = 0.0;
    double q_mix = 0.0;
    double q_hx = 0.0;
    double q_sum = 0.0;    ///< [W]
    double m_e_dot = 0.0;  ///< evaporation [kg·s⁻¹]
    double v_e_dot = 0.0;  ///< evaporation [m³·s⁻¹]
};

/// Temperature-dependent constants, all in the mol·m⁻³ unit system.
struct EquilibriumSet {
    double k1 = 0.0;
    double k2 = 0.0;
    double kw = 0.0;
    double kh_o2 = 0.0;  ///< [mol·m⁻³·atm⁻¹]
    double kh_co2 = 0.0;
    double x_o2_eq = 0.0;
    double co2_eq = 0.0;
    double co2_iny = 0.0;
};

} // namespace raceway
