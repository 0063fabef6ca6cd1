#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <deque>
#include <string>
#include <utility>
#include <vector>

#include "raceway/control/types.hpp"
#include "raceway/integrator.hpp"
#include "raceway/model/plant.hpp"
#include "raceway/sim/scenario.hpp"

namespace raceway {

/// Transport delay of the gas lines: what enters now leaves `length` steps later.
class DelayBuffer {
public:
    struct Gas {
        double q_air = 0.0;
        double q_co2 = 0.0;
    };

    explicit DelayBuffer(std::size_t length = 0) : queue_(length, Gas{}) {}

    std::size_t length() const noexcept { return queue_.size(); }

    /// Inserts the new command and returns the one delivered this step.
    Gas push(Gas in)
    {
        if (queue_.empty())
            return in;
        queue_.push_back(in);
        const Gas out = queue_.front();
        queue_.pop_front();
        return out;
    }

    /// Flow still in transit, summed per gas.
    Gas residue() const noexcept
    {
        Gas r;
        for (const auto& g : queue_) {
            r.q_air += g.q_air;
            r.q_co2 += g.q_co2;
        }
        return r;
    }

private:
    std::deque<Gas> queue_;
};

/// Clamps the controller outputs to the actuator limits and converts the binary pump commands.
inline ActuatorInputs saturate_and_map(const ControlSignals& u, const ActuatorLimits& lim)
{
    ActuatorInputs a;
    a.q_co2 = std::clamp(u.q_co2, 0.0, lim.q_co2_max);
    a.q_air = std::clamp(u.q_air, 0.0, lim.q_air_max);
    a.q_w = std::clamp(u.q_w, 0.0, lim.q_w_max);
    a.t_in_hx = std::clamp(u.t_in_hx, lim.t_in_min, lim.t_in_max);
    a.q_d = lim.pump_rate * u.q_d_cmd;
    a.q_h = lim.pump_rate * u.q_h_cmd;
    return a;
}

/// Preview from the loop instant after `index` to the end of a run of `steps` steps.
inline Forecast build_forecast(const Scenario& sc, std::size_t index, std::size_t steps, double t_m)
{
    if (index > steps)
        fail(ErrorKind::scenario, "forecast index beyond the horizon");
    return Forecast(&sc, static_cast<double>(index) * t_m, t_m, steps - index);
}

struct SimulationConfig {
    double t_m = 60.0;          ///< loop period [s]
    double horizon = 6 * 86400; ///< [s]
    double gas_delay = 300.0;   ///< [s]
    References refs;
    IntegratorConfig integrator;

    std::size_t steps() const { return static_cast<std::size_t>(std::llround(horizon / t_m)); }
    std::size_t delay_steps() const { return static_cast<std::size_t>(std::llround(gas_delay / t_m)); }

    void validate() const
    {
        if (!(t_m > 0.0) || !(horizon >= 0.0))
            fail(ErrorKind::config, "need t_m > 0 and horizon >= 0");
        if (std::abs(static_cast<double>(steps()) * t_m - horizon) > 1e-9 * std::max(1.0, horizon))
            fail(ErrorKind::config, "horizon must be a multiple of the loop period");
        if (!(gas_delay >= 0.0) || std::abs(static_cast<double>(delay_steps()) * t_m - gas_delay) > 1e-9 * t_m)
            fail(ErrorKind::config, "gas delay must be a non-negative multiple of the loop period");
        integrator.validate(t_m);
    }
};

/// Per-step trajectory. Entry k describes the loop instant t = k·t_m: the measured state,
/// the commands issued and the inputs applied over [t, t + t_m].
struct ResultsLog {
    // run description
    double t_m = 0.0;
    double area = 0.0;
    std::size_t delay_steps = 0;
    ActuatorLimits limits;
    References refs;
    std::array<std::string, 4> controllers;
    StateVector initial_state;
    StateVector final_state;
    DerivedOutputs final_outputs;

    std::vector<double> time, time_secday;
    std::vector<double> ph_ref, do_ref, temp_ref;
    std::vector<double> ph, do_pct, temp, x_alg_gl, depth, vol;
    std::vector<double> rad_global, rad_par, temp_ext, rh, wind;
    std::vector<double> q_co2_cmd, q_air_cmd;     // as returned by the controllers
    std::vector<double> q_co2_sat, q_air_sat;     // after saturation, entering the delay line
    std::vector<double> q_co2, q_air;             // delivered to the plant
    std::vector<double> q_d_cmd, q_h_cmd, q_d, q_h;
    std::vector<double> cum_air_l, cum_co2_l, cum_harv_g;
    std::vector<double> i_av, mu_i, mu_t, mu_ph, mu_do, p_gross, mu_g, m_resp;
    std::vector<double> x_alg, x_o2, dic, cat, h, co2, hco3, co3;
    std::vector<double> q_irrad, q_rad, q_cond, q_evap, q_conv, q_dil, q_harv, q_mix, q_sum;
    std::vector<double> hx_q_w, hx_t_in, hx_t_out, hx_ua, hx_q, hx_q_w_max, hx_t_in_min, hx_t_in_max;

    std::size_t size() const noexcept { return time.size(); }

    using Column = std::vector<double> ResultsLog::*;
    struct ColumnInfo {
        const char* name;
        Column column;
    };

    static const std::vector<ColumnInfo>& columns()
    {
        static const std::vector<ColumnInfo> cols{
            {"time_s", &ResultsLog::time}, {"time_secday", &ResultsLog::time_secday},
            {"ph_ref", &ResultsLog::ph_ref}, {"do_ref_pct", &ResultsLog::do_ref},
            {"temp_ref_c", &ResultsLog::temp_ref}, {"ph", &ResultsLog::ph}, {"do_pct", &ResultsLog::do_pct},
            {"temp_c", &ResultsLog::temp}, {"x_alg_gl", &ResultsLog::x_alg_gl}, {"depth_m", &ResultsLog::depth},
            {"vol_m3", &ResultsLog::vol}, {"rad_global_wm2", &ResultsLog::rad_global},
            {"rad_par", &ResultsLog::rad_par}, {"temp_ext_c", &ResultsLog::temp_ext},
            {"rh_pct", &ResultsLog::rh}, {"wind_ms", &ResultsLog::wind},
            {"q_co2_cmd", &ResultsLog::q_co2_cmd}, {"q_air_cmd", &ResultsLog::q_air_cmd},
            {"q_co2_sat", &ResultsLog::q_co2_sat}, {"q_air_sat", &ResultsLog::q_air_sat},
            {"q_co2", &ResultsLog::q_co2}, {"q_air", &ResultsLog::q_air}, {"q_d_cmd", &ResultsLog::q_d_cmd},
            {"q_h_cmd", &ResultsLog::q_h_cmd}, {"q_d", &ResultsLog::q_d}, {"q_h", &ResultsLog::q_h},
            {"cum_air_l", &ResultsLog::cum_air_l}, {"cum_co2_l", &ResultsLog::cum_co2_l},
            {"cum_harv_g", &ResultsLog::cum_harv_g}, {"i_av", &ResultsLog::i_av}, {"mu_i", &ResultsLog::mu_i},
            {"mu_t", &ResultsLog::mu_t}, {"mu_ph", &ResultsLog::mu_ph}, {"mu_do", &ResultsLog::mu_do},
            {"p_gross", &ResultsLog::p_gross}, {"mu_g", &ResultsLog::mu_g}, {"m_resp", &ResultsLog::m_resp},
            {"x_alg", &ResultsLog::x_alg}, {"x_o2", &ResultsLog::x_o2}, {"dic", &ResultsLog::dic},
            {"cat", &ResultsLog::cat}, {"h", &ResultsLog::h}, {"co2", &ResultsLog::co2},
            {"hco3", &ResultsLog::hco3}, {"co3", &ResultsLog::co3}, {"q_irrad", &ResultsLog::q_irrad},
            {"q_rad", &ResultsLog::q_rad}, {"q_cond", &ResultsLog::q_cond}, {"q_evap", &ResultsLog::q_evap},
            {"q_conv", &ResultsLog::q_conv}, {"q_dil", &ResultsLog::q_dil}, {"q_harv", &ResultsLog::q_harv},
            {"q_mix", &ResultsLog::q_mix}, {"q_sum", &ResultsLog::q_sum}, {"hx_q_w", &ResultsLog::hx_q_w},
            {"hx_t_in", &ResultsLog::hx_t_in}, {"hx_t_out", &ResultsLog::hx_t_out},
            {"hx_ua", &ResultsLog::hx_ua}, {"hx_q", &ResultsLog::hx_q}, {"hx_q_w_max", &ResultsLog::hx_q_w_max},
            {"hx_t_in_min", &ResultsLog::hx_t_in_min}, {"hx_t_in_max", &ResultsLog::hx_t_in_max},
        };
        return cols;
    }

    void reserve(std::size_t n)
    {
        for (const auto& c : columns())
            (this->*c.column).reserve(n);
    }
};

namespace detail {

inline void check_signals(const ControlSignals& u, std::size_t step)
{
    const auto v = u.values();
    for (std::size_t i = 0; i < v.size(); ++i)
        if (!std::isfinite(v[i]))
            fail(ErrorKind::controller, "step " + std::to_string(step) + ": control signal " +
                                            ControlSignals::names[i] + " is " +
                                            (std::isnan(v[i]) ? "unassigned or NaN" : "infinite"));
    for (double b : {u.q_d_cmd, u.q_h_cmd})
        if (b != 0.0 && b != 1.0)
            fail(ErrorKind::controller, "step " + std::to_string(step) + ": binary command must be exactly 0 or 1");
}

} // namespace detail

/// Runs the closed loop over the configured horizon.
inline ResultsLog run_simulation(const Scenario& sc, ControllerSet& ctrl, const ActuatorLimits& lim,
                                 const SimulationConfig& cfg, const ModelParameters& params,
                                 const ReactorGeometry& geom)
{
    cfg.validate();
    lim.validate();
    geom.validate();
    params.validate();
    sc.validate(cfg.horizon);
    if (!ctrl.ph || !ctrl.dissolved_oxygen || !ctrl.harvest || !ctrl.temperature)
        fail(ErrorKind::config, "all four controller slots must be filled");
    try {
        validate_state(sc.initial, geom);
    } catch (const Error& e) {
        fail(ErrorKind::scenario, std::string("invalid initial state: ") + e.what());
    }

    const std::size_t n = cfg.steps();
    const double t_m = cfg.t_m;
    ResultsLog log;
    log.t_m = t_m;
    log.area = geom.area();
    log.delay_steps = cfg.delay_steps();
    log.limits = lim;
    log.refs = cfg.refs;
    log.controllers = {ctrl.ph->name(), ctrl.dissolved_oxygen->name(), ctrl.harvest->name(),
                       ctrl.temperature->name()};
    log.initial_state = sc.initial;
    log.reserve(n);

    DelayBuffer delay(cfg.delay_steps());
    ControlSignals u;
    StateVector s = sc.initial;
    double cum_air = 0.0, cum_co2 = 0.0, cum_harv = 0.0;

    for (std::size_t k = 0; k < n; ++k) {
        ControllerContext ctx;
        ctx.time = Timeline::at(k, t_m, sc.start_offset);
        const auto eq = equilibria(s.temp, params);
        const auto out = compute_outputs(s, geom, eq);
        ctx.obs = {out.ph, out.do_pct, out.depth, out.x_alg_gl, s.temp};
        ctx.refs = cfg.refs;
        ctx.meteo = sc.at(ctx.time.time);
        ctx.forecast = build_forecast(sc, k, n, t_m);

        ctrl.ph->update(ctx, u);
        ctrl.dissolved_oxygen->update(ctx, u);
        ctrl.harvest->update(ctx, u);
        ctrl.temperature->update(ctx, u);
        detail::check_signals(u, k);

        ActuatorInputs act = saturate_and_map(u, lim);
        const auto sat = act;
        const auto gas = delay.push({act.q_air, act.q_co2});
        act.q_air = gas.q_air;
        act.q_co2 = gas.q_co2;

        PlantEvaluation ev;
        try {
            ev = evaluate_plant(s, ctx.meteo, act, geom, params);
        } catch (const Error& e) {
            throw IntegrationFailure("step " + std::to_string(k) + ": " + e.detail(), detail::to_vector(s.to_array()));
        }
        const auto hx = heat_exchanger(act.q_w, act.t_in_hx, s.temp, params);

        cum_air += act.q_air * t_m * 1000.0;
        cum_co2 += act.q_co2 * t_m * 1000.0;
        cum_harv += s.x_alg * act.q_h * t_m;

        log.time.push_back(ctx.time.time);
        log.time_secday.push_back(ctx.time.time_secday);
        log.ph_ref.push_back(cfg.refs.ph_ref);
        log.do_ref.push_back(cfg.refs.do_ref);
        log.temp_ref.push_back(cfg.refs.temp_ref);
        log.ph.push_back(out.ph);
        log.do_pct.push_back(out.do_pct);
        log.temp.push_back(s.temp);
        log.x_alg_gl.push_back(out.x_alg_gl);
        log.depth.push_back(out.depth);
        log.vol.push_back(s.vol);
        log.rad_global.push_back(ctx.meteo.rad_global);
        log.rad_par.push_back(ctx.meteo.rad_par);
        log.temp_ext.push_back(ctx.meteo.temp_ext);
        log.rh.push_back(ctx.meteo.rh);
        log.wind.push_back(ctx.meteo.wind);
        log.q_co2_cmd.push_back(u.q_co2);
        log.q_air_cmd.push_back(u.q_air);
        log.q_co2_sat.push_back(sat.q_co2);
        log.q_air_sat.push_back(sat.q_air);
        log.q_co2.push_back(act.q_co2);
        log.q_air.push_back(act.q_air);
        log.q_d_cmd.push_back(u.q_d_cmd);
        log.q_h_cmd.push_back(u.q_h_cmd);
        log.q_d.push_back(act.q_d);
        log.q_h.push_back(act.q_h);
        log.cum_air_l.push_back(cum_air);
        log.cum_co2_l.push_back(cum_co2);
        log.cum_harv_g.push_back(cum_harv);
        log.i_av.push_back(ev.rates.i_av);
        log.mu_i.push_back(ev.rates.mu_i);
        log.mu_t.push_back(ev.rates.mu_t);
        log.mu_ph.push_back(ev.rates.mu_ph);
        log.mu_do.push_back(ev.rates.mu_do);
        log.p_gross.push_back(ev.rates.p_gross);
        log.mu_g.push_back(ev.rates.mu_g);
        log.m_resp.push_back(ev.rates.m_resp);
        log.x_alg.push_back(s.x_alg);
        log.x_o2.push_back(s.x_o2);
        log.dic.push_back(s.dic);
        log.cat.push_back(s.cat);
        log.h.push_back(s.h);
        log.co2.push_back(ev.species.co2);
        log.hco3.push_back(ev.species.hco3);
        log.co3.push_back(ev.species.co3);
        log.q_irrad.push_back(ev.heat.q_irrad);
        log.q_rad.push_back(ev.heat.q_rad);
        log.q_cond.push_back(ev.heat.q_cond);
        log.q_evap.push_back(ev.heat.q_evap);
        log.q_conv.push_back(ev.heat.q_conv);
        log.q_dil.push_back(ev.heat.q_dil);
        log.q_harv.push_back(ev.heat.q_harv);
        log.q_mix.push_back(ev.heat.q_mix);
        log.q_sum.push_back(ev.heat.q_sum);
        log.hx_q_w.push_back(act.q_w);
        log.hx_t_in.push_back(act.t_in_hx);
        log.hx_t_out.push_back(hx.t_out);
        log.hx_ua.push_back(params.thermal.hx_ua);
        log.hx_q.push_back(hx.q_hx);
        log.hx_q_w_max.push_back(lim.q_w_max);
        log.hx_t_in_min.push_back(lim.t_in_min);
        log.hx_t_in_max.push_back(lim.t_in_max);

        try {
            s = integrate_macro_step(s, ctx.meteo, act, geom, params, t_m, cfg.integrator);
        } catch (const IntegrationFailure& e) {
            throw IntegrationFailure("step " + std::to_string(k) + ": " + e.detail(), e.state());
        } catch (const Error& e) {
            if (e.kind() == ErrorKind::controller || e.kind() == ErrorKind::config)
                throw;
            throw IntegrationFailure("step " + std::to_string(k) + ": " + e.detail(), detail::to_vector(s.to_array()));
        }
    }
    log.final_state = s;
    log.final_outputs = compute_outputs(s, geom, equilibria(s.temp, params));
    return log;
}

} // namespace raceway
