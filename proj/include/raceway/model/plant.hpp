#pragma once

#include <cmath>
#include <string>

#include "raceway/model/biology.hpp"
#include "raceway/model/carbonate.hpp"
#include "raceway/model/equilibria.hpp"
#include "raceway/model/gas_transfer.hpp"
#include "raceway/model/parameters.hpp"
#include "raceway/model/thermal.hpp"
#include "raceway/model/types.hpp"

namespace raceway {

/// Throws a domain error when `s` violates the physical state invariants.
inline void validate_state(const StateVector& s, const ReactorGeometry& g)
{
    for (double v : s.to_array())
        if (!std::isfinite(v))
            fail(ErrorKind::domain, "state contains a non-finite value");
    if (s.x_alg < 0 || s.x_o2 < 0 || s.dic < 0 || s.cat < 0)
        fail(ErrorKind::domain, "state concentrations must be non-negative");
    if (!(s.h > 0))
        fail(ErrorKind::domain, "proton concentration must be positive");
    if (!(s.vol > g.sump_volume()))
        fail(ErrorKind::domain, "culture volume must exceed the sump volume");
}

/// pH, DO saturation, biomass in g·L⁻¹ and depth.
inline DerivedOutputs compute_outputs(const StateVector& s, const ReactorGeometry& g, const EquilibriumSet& eq)
{
    if (!(eq.x_o2_eq > 0.0))
        fail(ErrorKind::model, "oxygen saturation concentration must be positive");
    if (!(s.h > 0.0))
        fail(ErrorKind::domain, "proton concentration must be positive");
    DerivedOutputs out;
    out.ph = -std::log10(s.h / 1000.0);
    out.do_pct = 100.0 * s.x_o2 / eq.x_o2_eq;
    out.x_alg_gl = s.x_alg / 1000.0;
    out.depth = (s.vol - g.sump_volume()) / (g.width * g.channel_length * g.channel_count);
    return out;
}

/// Every intermediate quantity of one model evaluation.
struct PlantEvaluation {
    EquilibriumSet eq;
    DerivedOutputs outputs;
    CarbonateSpeciation species;
    RateBundle rates;
    ThermalFluxes heat;
    GasTransfer gas;
    StateVector derivative;
};

inline PlantEvaluation evaluate_plant(const StateVector& s, const MeteoSample& m, const ActuatorInputs& act,
                                      const ReactorGeometry& g, const ModelParameters& p)
{
    const auto& e = p.eng;
    PlantEvaluation ev;
    ev.eq = equilibria(s.temp, p);
    ev.outputs = compute_outputs(s, g, ev.eq);
    if (!(ev.outputs.depth > 0.0))
        fail(ErrorKind::domain, "culture depth must be positive");
    ev.species = speciate_carbonates(s.dic, s.h, ev.eq.k1, ev.eq.k2, ev.eq.kw);
    ev.rates = biological_rates(s, m.rad_par, ev.outputs, p);
    ev.heat = thermal_fluxes(s, m, act, g, p);
    ev.gas = gas_transfer_coeffs(act, s, g, p);

    const double dil = act.q_d / s.vol;
    const double pw_share = g.width * g.paddlewheel_length * ev.outputs.depth / s.vol;
    const double net_bio = (ev.rates.p_gross - ev.rates.m_resp) * s.x_alg;
    const double co2 = ev.species.co2;

    auto& d = ev.derivative;
    d.vol = act.q_d - act.q_h - ev.heat.v_e_dot;
    d.x_alg = (ev.rates.mu_g - ev.rates.m_resp) * s.x_alg - dil * s.x_alg;

    d.dic = dil * (e.dic_in - s.dic)
            - net_bio * e.yield_co2 / e.molar_mass_co2
            + ev.gas.kla_co2_eff * (ev.eq.co2_iny - co2)
            + e.k_atm_co2 * (ev.eq.co2_eq - co2)
            + e.k_pw_co2 * pw_share * (ev.eq.co2_eq - co2)
            + ev.gas.strip_co2_by_o2 * (ev.eq.co2_eq - co2);

    d.cat = dil * (e.cat_in - s.cat);

    const double o2_gap = ev.eq.x_o2_eq - s.x_o2;
    d.x_o2 = dil * o2_gap
             + net_bio * e.yield_o2 / e.molar_mass_o2
             + ev.gas.kla_o2_eff * o2_gap
             + e.k_atm_o2 * o2_gap
             + e.k_pw_o2 * pw_share * o2_gap
             - ev.gas.strip_o2_by_co2 * s.x_o2;

    d.h = proton_derivative(s.dic, s.cat, s.h, d.dic, d.cat, ev.eq.k1, ev.eq.k2, ev.eq.kw);
    d.temp = temperature_derivative(ev.heat.q_sum, s.temp, s.vol, d.vol, p);

    for (double v : d.to_array())
        if (!std::isfinite(v))
            fail(ErrorKind::model, "non-finite state derivative");
    return ev;
}

/// Time derivative of the seven states under constant inputs.
inline StateVector state_derivative(const StateVector& s, const MeteoSample& m, const ActuatorInputs& act,
                                    const ReactorGeometry& g, const ModelParameters& p)
{
    return evaluate_plant(s, m, act, g, p).derivative;
}

} // namespace raceway
