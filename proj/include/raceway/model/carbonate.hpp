#pragma once

#include <cmath>

#include "raceway/model/types.hpp"

namespace raceway {

/// Three-species carbonate equilibrium for given DIC and protons.
inline CarbonateSpeciation speciate_carbonates(double dic, double h, double k1, double k2, double kw)
{
    if (!(h > 0.0) || !std::isfinite(h))
        fail(ErrorKind::domain, "proton concentration must be positive and finite");
    CarbonateSpeciation s;
    s.delta = h * h + h * k1 + k1 * k2;
    s.co2 = dic * (h * h) / s.delta;
    s.hco3 = dic * (h * k1) / s.delta;
    s.co3 = dic * (k1 * k2) / s.delta;
    s.oh = kw / h;
    return s;
}

/// Charge balance f(H) = Cat + H - HCO3 - 2·CO3 - OH; zero on the physical manifold.
inline double electroneutrality_residual(double dic, double cat, double h, double k1, double k2, double kw)
{
    const auto s = speciate_carbonates(dic, h, k1, k2, kw);
    return cat + h - s.hco3 - 2.0 * s.co3 - s.oh;
}

/// Strong cations consistent with electroneutrality at (dic, h).
inline double balancing_cations(double dic, double h, double k1, double k2, double kw)
{
    const auto s = speciate_carbonates(dic, h, k1, k2, kw);
    return s.hco3 + 2.0 * s.co3 + s.oh - h;
}

/// dH/dt from the time derivative of the charge balance.
inline double proton_derivative(double dic, double cat, double h, double dic_dot, double cat_dot,
                                double k1, double k2, double kw)
{
    (void)cat; // f is linear in Cat, so its value does not enter the sensitivities
    if (!(h > 0.0))
        fail(ErrorKind::domain, "proton concentration must be positive");
    const double delta = h * h + h * k1 + k1 * k2;
    const double g = h * k1 / delta;        // HCO3/DIC
    const double hh = k1 * k2 / delta;      // CO3/DIC
    const double d_delta = 2.0 * h + k1;
    const double dg_dh = k1 * (k1 * k2 - h * h) / (delta * delta);
    const double dhh_dh = -(k1 * k2) / (delta * delta) * d_delta;

    const double f_dic = -(g + 2.0 * hh);
    const double f_cat = 1.0;
    const double f_h = 1.0 - dic * dg_dh - 2.0 * dic * dhh_dh + kw / (h * h);
    if (f_h == 0.0 || !std::isfinite(f_h))
        fail(ErrorKind::model, "singular charge-balance sensitivity");
    return -(f_dic * dic_dot + f_cat * cat_dot) / f_h;
}

} // namespace raceway
