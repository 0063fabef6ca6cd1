#pragma once

#include <cmath>

#include "raceway/model/parameters.hpp"
#include "raceway/model/types.hpp"

namespace raceway {

struct GasTransfer {
    double u_g_co2 = 0.0;         ///< superficial velocity [m·s⁻¹]
    double u_g_air = 0.0;
    double kla_co2 = 0.0;         ///< sump kLa [s⁻¹]
    double kla_o2 = 0.0;
    double kla_co2_eff = 0.0;     ///< volume-averaged kLa [s⁻¹]
    double kla_o2_eff = 0.0;
    double strip_co2_by_o2 = 0.0; ///< CO₂ exchange induced by air bubbling [s⁻¹]
    double strip_o2_by_co2 = 0.0; ///< O₂ stripping induced by CO₂ bubbling [s⁻¹]
};

namespace detail {
inline double power_law_kla(double scale, double u_g, double exponent)
{
    return u_g > 0.0 ? scale * std::pow(u_g, exponent) : 0.0;
}
} // namespace detail

inline GasTransfer gas_transfer_coeffs(const ActuatorInputs& act, const StateVector& s,
                                       const ReactorGeometry& g, const ModelParameters& p)
{
    if (!(act.q_co2 >= 0.0) || !(act.q_air >= 0.0))
        fail(ErrorKind::domain, "gas flows must be non-negative");
    const auto& e = p.eng;
    const double a_sump = g.sump_area();
    GasTransfer gt;
    gt.u_g_co2 = act.q_co2 / a_sump;
    gt.u_g_air = act.q_air / a_sump;
    gt.kla_co2 = detail::power_law_kla(e.kla_scale_co2, gt.u_g_co2, e.kla_exponent_co2);
    gt.kla_o2 = detail::power_law_kla(e.kla_scale_o2, gt.u_g_air, e.kla_exponent_o2);
    gt.kla_co2_eff = gt.kla_co2 * a_sump / s.vol;
    gt.kla_o2_eff = gt.kla_o2 * a_sump / s.vol;
    gt.strip_co2_by_o2 = e.k_strip_co2_by_o2 * gt.kla_o2_eff;
    gt.strip_o2_by_co2 = e.k_strip_o2_by_co2 * gt.kla_co2_eff;
    return gt;
}

} // namespace raceway
