#pragma once

#include <array>
#include <cmath>
#include <string>
#include <string_view>

#include "raceway/errors.hpp"

namespace raceway {

struct ThermalParameters {
    double alpha_rad = 0.0;          ///< shortwave absorptance [-]
    double emissivity_water = 0.0;   ///< ε_w [-]
    double stefan_boltzmann = 0.0;   ///< σ [W·m⁻²·K⁻⁴]
    double liner_thickness = 0.0;    ///< [m]
    double liner_conductivity = 0.0; ///< [W·m⁻¹·K⁻¹]
    double ground_thickness = 0.0;   ///< [m]
    double ground_conductivity = 0.0;///< [W·m⁻¹·K⁻¹]
    double ground_temp = 0.0;        ///< T_g [°C]
    double evap_mass_transfer = 0.0; ///< k_m0 [m·s⁻¹]
    double evap_wind_coeff = 0.0;    ///< c_w [s·m⁻¹], k_m = k_m0·(1 + c_w·wind)
    double convection_coeff = 0.0;   ///< h_c [W·m⁻²·K⁻¹]
    double mixing_power = 0.0;       ///< P_mix [W]
    double water_density = 0.0;      ///< ρ_w [kg·m⁻³]
    double water_heat_capacity = 0.0;///< C_p,w [J·kg⁻¹·K⁻¹]
    double hx_ua = 0.0;              ///< UA [W·K⁻¹]
    double hx_regularization = 0.0;  ///< ε floor on C_w [W·K⁻¹]
    double sky_emissivity_a = 0.0;   ///< clear-sky emissivity, constant term
    double sky_emissivity_b = 0.0;   ///< vapour-pressure coefficient [hPa⁻¹]
    double sky_emissivity_c = 0.0;   ///< exponential temperature scale [K]
};

struct BiologicalParameters {
    double mu_max_per_day = 0.0;     ///< μ_max [day⁻¹]
    double eta_x = 0.0;              ///< η_X [-]
    double light_extinction = 0.0;   ///< K_a [m²·g⁻¹]
    double light_half_sat = 0.0;     ///< I_k [µmol·m⁻²·s⁻¹]
    double light_exponent = 0.0;     ///< n [-]
    double temp_min = 0.0;
    double temp_opt = 0.0;
    double temp_max = 0.0;
    double ph_min = 0.0;
    double ph_opt = 0.0;
    double ph_max = 0.0;
    double do_max = 0.0;             ///< [%]
    double do_exponent = 0.0;        ///< m_DO [-]
    double m_min_per_day = 0.0;      ///< basal maintenance at 20 °C [day⁻¹]
    double resp_light_gain = 0.0;    ///< k_I^resp [-]
    double q10 = 0.0;

    double mu_max() const noexcept { return mu_max_per_day / 86400.0; }
    double m_min() const noexcept { return m_min_per_day / 86400.0; }
};

struct EngineeringParameters {
    double kla_scale_co2 = 0.0;      ///< α_CO2
    double kla_exponent_co2 = 0.0;   ///< β_CO2
    double kla_scale_o2 = 0.0;       ///< α_O2
    double kla_exponent_o2 = 0.0;    ///< β_O2
    double k_atm_co2 = 0.0;          ///< [s⁻¹]
    double k_atm_o2 = 0.0;           ///< [s⁻¹]
    double k_pw_co2 = 0.0;           ///< [s⁻¹]
    double k_pw_o2 = 0.0;            ///< [s⁻¹]
    double k_strip_co2_by_o2 = 0.0;  ///< [-]
    double k_strip_o2_by_co2 = 0.0;  ///< [-]
    double yield_co2 = 0.0;          ///< Y_CO2 [g·g⁻¹]
    double yield_o2 = 0.0;           ///< Y_O2 [g·g⁻¹]
    double molar_mass_co2 = 0.0;     ///< [g·mol⁻¹]
    double molar_mass_o2 = 0.0;      ///< [g·mol⁻¹]
    double dic_in = 0.0;             ///< [mol·m⁻³]
    double cat_in = 0.0;             ///< [mol·m⁻³]
    double kh_ref_o2 = 0.0;          ///< [mol·m⁻³·atm⁻¹]
    double kh_ref_co2 = 0.0;         ///< [mol·m⁻³·atm⁻¹]
    double henry_factor_o2 = 0.0;    ///< C_O2 [K]
    double henry_factor_co2 = 0.0;   ///< C_CO2 [K]
    double k1_ref_mol_l = 0.0;       ///< [mol·L⁻¹]
    double k2_ref_mol_l = 0.0;       ///< [mol·L⁻¹]
    double kw_ref_mol2_l2 = 0.0;     ///< [mol²·L⁻²]
    double dh_k1 = 0.0;              ///< [J·mol⁻¹]
    double dh_k2 = 0.0;
    double dh_kw = 0.0;
    double gas_constant = 0.0;       ///< R [J·mol⁻¹·K⁻¹]
    double p_atm = 0.0;              ///< [atm]
    double y_o2 = 0.0;
    double y_co2 = 0.0;
    double y_pure_co2 = 0.0;
    double t_ref = 0.0;              ///< [K]

    // mol·L⁻¹ → mol·m⁻³ (and its square for K_W)
    double k1_ref() const noexcept { return k1_ref_mol_l * 1.0e3; }
    double k2_ref() const noexcept { return k2_ref_mol_l * 1.0e3; }
    double kw_ref() const noexcept { return kw_ref_mol2_l2 * 1.0e6; }
};

struct ModelParameters {
    ThermalParameters thermal;
    BiologicalParameters bio;
    EngineeringParameters eng;

    void validate() const;
};

/// Addressable parameter: section, key, unit comment and accessor.
template <class Owner>
struct ParameterField {
    std::string_view section;
    std::string_view key;
    std::string_view unit;
    double& (*ref)(Owner&);
};

#define RACEWAY_FIELD(sec, key, unit, expr)                                          \
    ParameterField<ModelParameters>                                                  \
    {                                                                                \
        sec, key, unit, [](ModelParameters& p) -> double& { return p.expr; }         \
    }

inline const auto& model_parameter_fields()
{
    static const std::array fields{
        RACEWAY_FIELD("thermal", "alpha_rad", "-", thermal.alpha_rad),
        RACEWAY_FIELD("thermal", "emissivity_water", "-", thermal.emissivity_water),
        RACEWAY_FIELD("thermal", "stefan_boltzmann", "W m-2 K-4", thermal.stefan_boltzmann),
        RACEWAY_FIELD("thermal", "liner_thickness", "m", thermal.liner_thickness),
        RACEWAY_FIELD("thermal", "liner_conductivity", "W m-1 K-1", thermal.liner_conductivity),
        RACEWAY_FIELD("thermal", "ground_thickness", "m", thermal.ground_thickness),
        RACEWAY_FIELD("thermal", "ground_conductivity", "W m-1 K-1", thermal.ground_conductivity),
        RACEWAY_FIELD("thermal", "ground_temp", "degC", thermal.ground_temp),
        RACEWAY_FIELD("thermal", "evap_mass_transfer", "m s-1", thermal.evap_mass_transfer),
        RACEWAY_FIELD("thermal", "evap_wind_coeff", "s m-1", thermal.evap_wind_coeff),
        RACEWAY_FIELD("thermal", "convection_coeff", "W m-2 K-1", thermal.convection_coeff),
        RACEWAY_FIELD("thermal", "mixing_power", "W", thermal.mixing_power),
        RACEWAY_FIELD("thermal", "water_density", "kg m-3", thermal.water_density),
        RACEWAY_FIELD("thermal", "water_heat_capacity", "J kg-1 K-1", thermal.water_heat_capacity),
        RACEWAY_FIELD("thermal", "hx_ua", "W K-1", thermal.hx_ua),
        RACEWAY_FIELD("thermal", "hx_regularization", "W K-1", thermal.hx_regularization),
        RACEWAY_FIELD("thermal", "sky_emissivity_a", "-", thermal.sky_emissivity_a),
        RACEWAY_FIELD("thermal", "sky_emissivity_b", "hPa-1", thermal.sky_emissivity_b),
        RACEWAY_FIELD("thermal", "sky_emissivity_c", "K", thermal.sky_emissivity_c),

        RACEWAY_FIELD("biological", "mu_max_per_day", "day-1", bio.mu_max_per_day),
        RACEWAY_FIELD("biological", "eta_x", "-", bio.eta_x),
        RACEWAY_FIELD("biological", "light_extinction", "m2 g-1", bio.light_extinction),
        RACEWAY_FIELD("biological", "light_half_sat", "umol m-2 s-1", bio.light_half_sat),
        RACEWAY_FIELD("biological", "light_exponent", "-", bio.light_exponent),
        RACEWAY_FIELD("biological", "temp_min", "degC", bio.temp_min),
        RACEWAY_FIELD("biological", "temp_opt", "degC", bio.temp_opt),
        RACEWAY_FIELD("biological", "temp_max", "degC", bio.temp_max),
        RACEWAY_FIELD("biological", "ph_min", "-", bio.ph_min),
        RACEWAY_FIELD("biological", "ph_opt", "-", bio.ph_opt),
        RACEWAY_FIELD("biological", "ph_max", "-", bio.ph_max),
        RACEWAY_FIELD("biological", "do_max", "%", bio.do_max),
        RACEWAY_FIELD("biological", "do_exponent", "-", bio.do_exponent),
        RACEWAY_FIELD("biological", "m_min_per_day", "day-1", bio.m_min_per_day),
        RACEWAY_FIELD("biological", "resp_light_gain", "-", bio.resp_light_gain),
        RACEWAY_FIELD("biological", "q10", "-", bio.q10),

        RACEWAY_FIELD("engineering", "kla_scale_co2", "-", eng.kla_scale_co2),
        RACEWAY_FIELD("engineering", "kla_exponent_co2", "-", eng.kla_exponent_co2),
        RACEWAY_FIELD("engineering", "kla_scale_o2", "-", eng.kla_scale_o2),
        RACEWAY_FIELD("engineering", "kla_exponent_o2", "-", eng.kla_exponent_o2),
        RACEWAY_FIELD("engineering", "k_atm_co2", "s-1", eng.k_atm_co2),
        RACEWAY_FIELD("engineering", "k_atm_o2", "s-1", eng.k_atm_o2),
        RACEWAY_FIELD("engineering", "k_pw_co2", "s-1", eng.k_pw_co2),
        RACEWAY_FIELD("engineering", "k_pw_o2", "s-1", eng.k_pw_o2),
        RACEWAY_FIELD("engineering", "k_strip_co2_by_o2", "-", eng.k_strip_co2_by_o2),
        RACEWAY_FIELD("engineering", "k_strip_o2_by_co2", "-", eng.k_strip_o2_by_co2),
        RACEWAY_FIELD("engineering", "yield_co2", "g g-1", eng.yield_co2),
        RACEWAY_FIELD("engineering", "yield_o2", "g g-1", eng.yield_o2),
        RACEWAY_FIELD("engineering", "molar_mass_co2", "g mol-1", eng.molar_mass_co2),
        RACEWAY_FIELD("engineering", "molar_mass_o2", "g mol-1", eng.molar_mass_o2),
        RACEWAY_FIELD("engineering", "dic_in", "mol m-3", eng.dic_in),
        RACEWAY_FIELD("engineering", "cat_in", "mol m-3", eng.cat_in),
        RACEWAY_FIELD("engineering", "kh_ref_o2", "mol m-3 atm-1", eng.kh_ref_o2),
        RACEWAY_FIELD("engineering", "kh_ref_co2", "mol m-3 atm-1", eng.kh_ref_co2),
        RACEWAY_FIELD("engineering", "henry_factor_o2", "K", eng.henry_factor_o2),
        RACEWAY_FIELD("engineering", "henry_factor_co2", "K", eng.henry_factor_co2),
        RACEWAY_FIELD("engineering", "k1_ref_mol_l", "mol L-1", eng.k1_ref_mol_l),
        RACEWAY_FIELD("engineering", "k2_ref_mol_l", "mol L-1", eng.k2_ref_mol_l),
        RACEWAY_FIELD("engineering", "kw_ref_mol2_l2", "mol2 L-2", eng.kw_ref_mol2_l2),
        RACEWAY_FIELD("engineering", "dh_k1", "J mol-1", eng.dh_k1),
        RACEWAY_FIELD("engineering", "dh_k2", "J mol-1", eng.dh_k2),
        RACEWAY_FIELD("engineering", "dh_kw", "J mol-1", eng.dh_kw),
        RACEWAY_FIELD("engineering", "gas_constant", "J mol-1 K-1", eng.gas_constant),
        RACEWAY_FIELD("engineering", "p_atm", "atm", eng.p_atm),
        RACEWAY_FIELD("engineering", "y_o2", "-", eng.y_o2),
        RACEWAY_FIELD("engineering", "y_co2", "-", eng.y_co2),
        RACEWAY_FIELD("engineering", "y_pure_co2", "-", eng.y_pure_co2),
        RACEWAY_FIELD("engineering", "t_ref", "K", eng.t_ref),
    };
    return fields;
}

#undef RACEWAY_FIELD

inline void ModelParameters::validate() const
{
    auto require = [](bool ok, const char* what) {
        if (!ok)
            fail(ErrorKind::config, std::string("invalid parameters: ") + what);
    };
    // everything must be finite
    ModelParameters copy = *this;
    for (const auto& f : model_parameter_fields())
        require(std::isfinite(f.ref(copy)), "non-finite value");

    const auto& t = thermal;
    require(t.alpha_rad >= 0 && t.alpha_rad <= 1, "alpha_rad must lie in [0,1]");
    require(t.emissivity_water >= 0 && t.emissivity_water <= 1, "emissivity_water must lie in [0,1]");
    require(t.stefan_boltzmann > 0, "stefan_boltzmann must be positive");
    require(t.liner_thickness >= 0 && t.ground_thickness >= 0, "layer thickness must be non-negative");
    require(t.liner_conductivity > 0 && t.ground_conductivity > 0, "conductivities must be positive");
    require(t.liner_thickness + t.ground_thickness > 0, "conduction path must have positive thickness");
    require(t.evap_mass_transfer >= 0 && t.evap_wind_coeff >= 0, "evaporation coefficients must be non-negative");
    require(t.convection_coeff >= 0, "convection_coeff must be non-negative");
    require(t.mixing_power >= 0, "mixing_power must be non-negative");
    require(t.water_density > 0 && t.water_heat_capacity > 0, "water properties must be positive");
    require(t.hx_ua >= 0, "hx_ua must be non-negative");
    require(t.hx_regularization > 0, "hx_regularization must be positive");

    const auto& b = bio;
    require(b.mu_max_per_day > 0, "mu_max must be positive");
    require(b.eta_x >= 0 && b.eta_x <= 1, "eta_x must lie in [0,1]");
    require(b.light_extinction > 0 && b.light_half_sat > 0 && b.light_exponent > 0,
            "light parameters must be positive");
    require(b.temp_min < b.temp_opt && b.temp_opt < b.temp_max, "need temp_min < temp_opt < temp_max");
    require(b.ph_min < b.ph_opt && b.ph_opt < b.ph_max, "need ph_min < ph_opt < ph_max");
    require(b.do_max > 100, "do_max must exceed 100 %");
    require(b.do_exponent > 0, "do_exponent must be positive");
    require(b.m_min_per_day >= 0 && b.resp_light_gain >= 0 && b.q10 > 0, "respiration parameters");

    const auto& e = eng;
    require(e.kla_scale_co2 >= 0 && e.kla_scale_o2 >= 0, "kla scales must be non-negative");
    require(e.kla_exponent_co2 > 0 && e.kla_exponent_o2 > 0, "kla exponents must be positive");
    require(e.k_atm_co2 >= 0 && e.k_atm_o2 >= 0 && e.k_pw_co2 >= 0 && e.k_pw_o2 >= 0,
            "surface transfer coefficients must be non-negative");
    require(e.k_strip_co2_by_o2 >= 0 && e.k_strip_o2_by_co2 >= 0, "stripping factors must be non-negative");
    require(e.yield_co2 > 0 && e.yield_o2 > 0 && e.molar_mass_co2 > 0 && e.molar_mass_o2 > 0,
            "yields and molar masses must be positive");
    require(e.dic_in >= 0 && e.cat_in >= 0, "inlet concentrations must be non-negative");
    require(e.kh_ref_o2 > 0 && e.kh_ref_co2 > 0, "Henry references must be positive");
    require(e.k1_ref_mol_l > 0 && e.k2_ref_mol_l > 0 && e.kw_ref_mol2_l2 > 0,
            "dissociation references must be positive");
    require(e.gas_constant > 0 && e.p_atm > 0 && e.t_ref > 0, "R, p_atm and T_ref must be positive");
    require(e.y_o2 > 0 && e.y_o2 < 1 && e.y_co2 > 0 && e.y_co2 < 1, "air mole fractions must lie in (0,1)");
    require(e.y_pure_co2 == 1.0, "y_pure_co2 must equal 1");
}

} // namespace raceway
