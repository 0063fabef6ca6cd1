#pragma once

#include <cmath>
#include <random>
#include <string>

#include "raceway/app.hpp"

namespace raceway::test {

inline const io::PlantConfig& default_plant()
{
    static const io::PlantConfig cfg = io::load_parameter_file(io::default_params_path());
    return cfg;
}

inline const ModelParameters& params() { return default_plant().params; }
inline const ReactorGeometry& geometry() { return default_plant().geometry; }

/// Electroneutral state from measurable quantities.
inline StateVector make_state(double x_gl = 0.5, double depth = 0.15, double temp = 25.0, double ph = 8.0,
                              double dic = 5.0, double do_pct = 120.0)
{
    io::InitialConditions ic{x_gl, depth, temp, ph, dic, do_pct};
    return ic.to_state(geometry(), params());
}

inline MeteoSample noon() { return {800.0, par_from_global(800.0), 25.0, 50.0, 2.0}; }
inline MeteoSample night() { return {0.0, 0.0, 15.0, 80.0, 1.0}; }

inline double rel_err(double a, double b)
{
    const double s = std::max(std::abs(a), std::abs(b));
    return s == 0.0 ? 0.0 : std::abs(a - b) / s;
}

inline Scenario constant_scenario(const MeteoSample& m, double seconds, double period = 300.0)
{
    Scenario sc;
    sc.period = period;
    for (double t = 0.0; t < seconds; t += period) {
        sc.time_s.push_back(t);
        sc.rad_global.push_back(m.rad_global);
        sc.rad_par.push_back(m.rad_par);
        sc.temp_ext.push_back(m.temp_ext);
        sc.rh.push_back(m.rh);
        sc.wind.push_back(m.wind);
    }
    return sc;
}

/// Controller writing fixed values into every signal.
inline std::unique_ptr<Controller> fixed_signals(ControlSignals v, const std::string& name = "const")
{
    return std::make_unique<FunctionController>(
        name, [v](const ControllerContext&, ControlSignals& u, FunctionController::State&) { u = v; });
}

/// Slot that writes nothing; pairs with fixed_signals in another slot.
inline std::unique_ptr<Controller> idle_slot()
{
    return std::make_unique<FunctionController>(
        "idle", [](const ControllerContext&, ControlSignals&, FunctionController::State&) {});
}

inline ControlSignals all_off()
{
    ControlSignals u;
    u.q_co2 = u.q_air = u.q_d_cmd = u.q_h_cmd = u.q_w = 0.0;
    u.t_in_hx = 20.0;
    return u;
}

/// Prediction model at the reference depth with the default pump.
inline BiomassModel empc_model(const ModelParameters& p)
{
    BiomassModel m;
    m.params = &p;
    m.volume = geometry().volume_at_depth(0.15);
    m.pump_rate = 1e-3;
    return m;
}

inline ResultsLog run_player(int player, double days = 6.0)
{
    auto m = io::load_manifest(io::asset_dir() + "/manifests/player" + std::to_string(player) + ".ini");
    m.days = days;
    m.sim.horizon = days * 86400.0;
    return run_manifest(m);
}

} // namespace raceway::test
