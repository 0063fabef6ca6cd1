#pragma once

#include <algorithm>
#include <cmath>

#include "raceway/model/parameters.hpp"
#include "raceway/model/types.hpp"

namespace raceway {

/// PAR photon flux from global irradiance (46 % PAR share, 4.56 µmol·J⁻¹).
inline double par_from_global(double rad_global)
{
    if (!std::isfinite(rad_global) || rad_global < 0.0)
        fail(ErrorKind::domain, "global irradiance must be finite and non-negative");
    return 0.46 * 4.56 * rad_global;
}

/// Cardinal window on [a, c] peaking at b, with smoothstep flanks.
inline double smooth_window(double x, double a, double b, double c)
{
    if (!(a < b && b < c))
        fail(ErrorKind::config, "smooth_window requires a < b < c");
    if (x <= a || x >= c)
        return 0.0;
    const double r = (x <= b) ? (x - a) / (b - a) : (c - x) / (c - b);
    return r * r * (3.0 - 2.0 * r);
}

struct LightLimitation {
    double i_av = 0.0;
    double mu_i = 0.0;
};

/// Depth-averaged Beer–Lambert irradiance and the Hill-type light factor.
inline LightLimitation light_limitation(double par, double x_alg, double depth, const ModelParameters& p)
{
    if (!(par >= 0.0) || !(depth > 0.0) || !(x_alg >= 0.0))
        fail(ErrorKind::domain, "light_limitation needs par >= 0, depth > 0, x_alg >= 0");
    const double z = p.bio.light_extinction * depth * x_alg;
    // (1 - e^-z)/z has a removable singularity at 0
    const double factor = (z < 1.0e-8) ? 1.0 - 0.5 * z : -std::expm1(-z) / z;
    LightLimitation out;
    out.i_av = par * factor;
    const double in = std::pow(out.i_av, p.bio.light_exponent);
    const double kn = std::pow(p.bio.light_half_sat, p.bio.light_exponent);
    out.mu_i = in / (kn + in);
    return out;
}

/// Oxygen inhibition, clamped to [0, 1] above DO_max.
inline double do_inhibition(double do_pct, const ModelParameters& p)
{
    const double ratio = std::max(do_pct, 0.0) / p.bio.do_max;
    return std::clamp(1.0 - std::pow(ratio, p.bio.do_exponent), 0.0, 1.0);
}

/// Maintenance/respiration rate [s⁻¹].
inline double maintenance_rate(double mu_i, double temp, const ModelParameters& p)
{
    return p.bio.m_min() * (1.0 + p.bio.resp_light_gain * (1.0 - mu_i)) *
           std::pow(p.bio.q10, (temp - 20.0) / 10.0);
}

/// Growth-side rates for explicit environmental conditions.
inline RateBundle biological_rates(double par, double x_alg, double depth, double temp, double ph,
                                   double do_pct, const ModelParameters& p)
{
    const auto light = light_limitation(par, std::max(x_alg, 0.0), depth, p);
    RateBundle r;
    r.i_av = light.i_av;
    r.mu_i = light.mu_i;
    r.mu_t = smooth_window(temp, p.bio.temp_min, p.bio.temp_opt, p.bio.temp_max);
    r.mu_ph = smooth_window(ph, p.bio.ph_min, p.bio.ph_opt, p.bio.ph_max);
    r.mu_do = do_inhibition(do_pct, p);
    r.p_gross = p.bio.mu_max() * r.mu_i * r.mu_t * r.mu_ph * r.mu_do;
    r.mu_g = p.bio.eta_x * r.p_gross;
    r.m_resp = maintenance_rate(r.mu_i, temp, p);
    return r;
}

inline RateBundle biological_rates(const StateVector& s, double par, const DerivedOutputs& out,
                                   const ModelParameters& p)
{
    return biological_rates(par, s.x_alg, out.depth, s.temp, out.ph, out.do_pct, p);
}

} // namespace raceway
