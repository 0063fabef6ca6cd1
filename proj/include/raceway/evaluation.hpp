#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "raceway/errors.hpp"
#include "raceway/model/types.hpp"
#include "raceway/sim/loop.hpp"

namespace raceway {

/// Σ |ref − y| / ref.
inline double cost_tracking(std::span<const double> y, std::span<const double> ref)
{
    if (y.size() != ref.size())
        fail(ErrorKind::evaluation, "tracking series differ in length");
    double j = 0.0;
    for (std::size_t k = 0; k < y.size(); ++k) {
        if (ref[k] == 0.0)
            fail(ErrorKind::evaluation, "zero reference at sample " + std::to_string(k));
        j += std::abs(ref[k] - y[k]) / std::abs(ref[k]);
    }
    return j;
}

/// Tracking error counted only where y exceeds the reference (reference used as an upper limit).
inline double cost_tracking_upper(std::span<const double> y, std::span<const double> ref)
{
    if (y.size() != ref.size())
        fail(ErrorKind::evaluation, "tracking series differ in length");
    double j = 0.0;
    for (std::size_t k = 0; k < y.size(); ++k) {
        if (ref[k] == 0.0)
            fail(ErrorKind::evaluation, "zero reference at sample " + std::to_string(k));
        if (y[k] > ref[k])
            j += (y[k] - ref[k]) / std::abs(ref[k]);
    }
    return j;
}

/// Σ ((u(k) − u(k−1)) / (u_max − u_min))².
inline double cost_smoothness(std::span<const double> u, double u_min, double u_max)
{
    if (!(u_max > u_min))
        fail(ErrorKind::evaluation, "smoothness needs u_max > u_min");
    const double span = u_max - u_min;
    double j = 0.0;
    for (std::size_t k = 1; k < u.size(); ++k) {
        const double d = (u[k] - u[k - 1]) / span;
        j += d * d;
    }
    return j;
}

/// Σ u(k) / u_max.
inline double cost_consumption(std::span<const double> u, double u_max)
{
    if (!(u_max > 0.0))
        fail(ErrorKind::evaluation, "consumption needs u_max > 0");
    double j = 0.0;
    for (double v : u)
        j += v / u_max;
    return j;
}

struct LoopWeights {
    double w_sp = 1.0;
    double w_s = 0.0;
    double w_s2 = 0.0; ///< second actuator (temperature loop only)
    double w_c = 0.0;
};

struct CostWeights {
    LoopWeights ph;
    LoopWeights dissolved_oxygen;
    LoopWeights temperature;
    bool do_upper_only = true;
};

/// Weights of the benchmark edition. Not exposed to controller authors.
inline constexpr CostWeights kBenchmarkWeights{
    {1.0, 0.25, 0.0, 0.25},
    {1.0, 0.25, 0.0, 0.25},
    {1.0, 0.125, 0.125, 0.25},
    true,
};

struct LoopTerms {
    double j_sp = 0.0;
    double j_s = 0.0;
    double j_s2 = 0.0;
    double j_c = 0.0;
    double total = 0.0;
};

struct LoopCostReport {
    LoopTerms ph;
    LoopTerms dissolved_oxygen;
    LoopTerms temperature;
    double j_ph = 0.0;
    double j_do = 0.0;
    double j_temp = 0.0;
    double j_avg = 0.0;
    bool normalized = false;
};

inline LoopCostReport loop_costs(const ResultsLog& log, const CostWeights& w = kBenchmarkWeights)
{
    const auto& lim = log.limits;
    LoopCostReport r;
    auto finish = [](LoopTerms& t, const LoopWeights& lw) {
        t.total = lw.w_sp * t.j_sp + lw.w_s * t.j_s + lw.w_s2 * t.j_s2 + lw.w_c * t.j_c;
    };

    r.ph.j_sp = cost_tracking(log.ph, log.ph_ref);
    r.ph.j_s = cost_smoothness(log.q_co2_sat, 0.0, lim.q_co2_max);
    r.ph.j_c = cost_consumption(log.q_co2_sat, lim.q_co2_max);
    finish(r.ph, w.ph);

    r.dissolved_oxygen.j_sp =
        w.do_upper_only ? cost_tracking_upper(log.do_pct, log.do_ref) : cost_tracking(log.do_pct, log.do_ref);
    r.dissolved_oxygen.j_s = cost_smoothness(log.q_air_sat, 0.0, lim.q_air_max);
    r.dissolved_oxygen.j_c = cost_consumption(log.q_air_sat, lim.q_air_max);
    finish(r.dissolved_oxygen, w.dissolved_oxygen);

    r.temperature.j_sp = cost_tracking(log.temp, log.temp_ref);
    r.temperature.j_s = cost_smoothness(log.hx_q_w, 0.0, lim.q_w_max);
    r.temperature.j_s2 = cost_smoothness(log.hx_t_in, lim.t_in_min, lim.t_in_max);
    r.temperature.j_c = cost_consumption(log.hx_q_w, lim.q_w_max);
    finish(r.temperature, w.temperature);

    r.j_ph = r.ph.total;
    r.j_do = r.dissolved_oxygen.total;
    r.j_temp = r.temperature.total;
    r.j_avg = (r.j_ph + r.j_do + r.j_temp) / 3.0;
    return r;
}

/// Loop indices relative to a baseline run; the global index is the mean of the ratios.
inline LoopCostReport normalize(const LoopCostReport& report, const LoopCostReport& baseline)
{
    auto ratio = [](double v, double b, const char* what) {
        if (!(b > 0.0))
            fail(ErrorKind::evaluation, std::string("baseline ") + what + " must be positive to normalize");
        return v / b;
    };
    LoopCostReport n = report;
    n.j_ph = ratio(report.j_ph, baseline.j_ph, "j_ph");
    n.j_do = ratio(report.j_do, baseline.j_do, "j_do");
    n.j_temp = ratio(report.j_temp, baseline.j_temp, "j_temp");
    n.j_avg = (n.j_ph + n.j_do + n.j_temp) / 3.0;
    n.normalized = true;
    return n;
}

struct KpiReport {
    double total_air_l = 0.0;
    double total_co2_l = 0.0;
    double harvested_g = 0.0;
    double initial_biomass_g = 0.0; ///< X_0
    double final_biomass_g = 0.0;   ///< X_f
    double biomass_produced_g = 0.0;
    double prod_areal = 0.0;        ///< [g·m⁻²·day⁻¹]
    double yield_pct = 0.0;
    double harv_areal = 0.0;        ///< [g·m⁻²·day⁻¹]
    double accum_rel_pct = 0.0;
    double days = 0.0;
};

inline KpiReport compute_kpis(const ResultsLog& log, double area, double horizon_days)
{
    if (!(area > 0.0) || !(horizon_days > 0.0))
        fail(ErrorKind::evaluation, "KPIs need a positive area and horizon");
    KpiReport k;
    k.days = horizon_days;
    if (log.size() > 0) {
        k.total_air_l = log.cum_air_l.back();
        k.total_co2_l = log.cum_co2_l.back();
        k.harvested_g = log.cum_harv_g.back();
    }
    k.initial_biomass_g = log.initial_state.x_alg * log.initial_state.vol;
    k.final_biomass_g = log.final_state.x_alg * log.final_state.vol;
    k.biomass_produced_g = (k.final_biomass_g - k.initial_biomass_g) + k.harvested_g;
    k.prod_areal = k.biomass_produced_g / (area * horizon_days);
    k.harv_areal = k.harvested_g / (area * horizon_days);
    k.yield_pct = k.biomass_produced_g > 0.0 ? 100.0 * k.harvested_g / k.biomass_produced_g : 0.0;
    k.accum_rel_pct = k.initial_biomass_g > 0.0
                          ? 100.0 * (k.final_biomass_g - k.initial_biomass_g) / k.initial_biomass_g
                          : 0.0;
    return k;
}

/// KPIs over the logged horizon. An empty log has no duration, so its areal rates stay 0.
inline KpiReport compute_kpis(const ResultsLog& log)
{
    if (log.size() == 0) {
        KpiReport k;
        k.initial_biomass_g = log.initial_state.x_alg * log.initial_state.vol;
        k.final_biomass_g = log.final_state.x_alg * log.final_state.vol;
        k.biomass_produced_g = k.final_biomass_g - k.initial_biomass_g;
        return k;
    }
    return compute_kpis(log, log.area, static_cast<double>(log.size()) * log.t_m / 86400.0);
}

} // namespace raceway
