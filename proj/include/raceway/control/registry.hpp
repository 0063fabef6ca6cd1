#pragma once

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "raceway/control/baseline.hpp"
#include "raceway/control/empc.hpp"
#include "raceway/control/primitives.hpp"
#include "raceway/control/types.hpp"
#include "raceway/model/parameters.hpp"
#include "raceway/sim/scenario.hpp"

namespace raceway {

/// First-order-plus-dead-time loop model with the SIMC closed-loop time constant.
struct LoopModel {
    double gain = 0.0;
    double tau = 0.0;   ///< [s]
    double theta = 0.0; ///< [s]
    double tau_c = 0.0; ///< [s]

    PiGains tune() const { return simc_tune(gain, tau, theta, tau_c); }
};

/// Tuning knobs shared by the baseline controllers.
struct ControllerTuning {
    LoopModel ph_loop{-2798.7, 1051.0, 400.0, 210.6};
    LoopModel do_loop{-24460.0, 3773.6, 400.0, 377.25};
    LoopModel temp_loop{19600.0, 2850.0, 468.0, 570.6};
    double ph_upper = 8.1;
    double ph_lower = 7.9;
    double do_upper = 150.0;
    double do_lower = 145.0;
    double temp_band = 2.0;
    double t_cold = 20.0;
    double t_hot = 50.0;
    double turbidostat_band = 0.01;
    double x_ref_gl = 0.5;
    double depth_ref = 0.15;
    int harvest_hour = 9;
    int harvest_minute = 0;
    double harvest_fraction = 0.2;
    EmpcDilution::Config empc;
    double empc_price = 1.0;
};

/// What a factory may use when building a slot.
struct ControllerDeps {
    ActuatorLimits limits;
    ModelParameters params;
    ReactorGeometry geometry;
    References refs;
    ControllerTuning tuning;
};

struct ControllerSelection {
    std::string ph = "onoff";
    std::string dissolved_oxygen = "onoff";
    std::string harvest = "fixed";
    std::string temperature = "none";
};

/// Name → factory tables per slot. User controllers register under the same contract.
class ControllerRegistry {
public:
    using Factory = std::function<std::unique_ptr<Controller>(const ControllerDeps&)>;
    enum class Slot { ph, dissolved_oxygen, harvest, temperature };

    static ControllerRegistry& instance()
    {
        static ControllerRegistry reg = builtin();
        return reg;
    }

    void add(Slot slot, const std::string& name, Factory f) { table(slot)[name] = std::move(f); }

    bool has(Slot slot, const std::string& name) const { return table(slot).count(name) != 0; }

    std::vector<std::string> names(Slot slot) const
    {
        std::vector<std::string> out;
        for (const auto& [k, v] : table(slot))
            out.push_back(k);
        return out;
    }

    std::unique_ptr<Controller> make(Slot slot, const std::string& name, const ControllerDeps& deps) const
    {
        const auto& t = table(slot);
        const auto it = t.find(name);
        if (it == t.end()) {
            std::string known;
            for (const auto& [k, v] : t)
                known += (known.empty() ? "" : ", ") + k;
            fail(ErrorKind::config, "unknown " + slot_name(slot) + " controller '" + name + "' (known: " + known + ")");
        }
        return it->second(deps);
    }

    ControllerSet make_set(const ControllerSelection& sel, const ControllerDeps& deps) const
    {
        ControllerSet set;
        set.ph = make(Slot::ph, sel.ph, deps);
        set.dissolved_oxygen = make(Slot::dissolved_oxygen, sel.dissolved_oxygen, deps);
        set.harvest = make(Slot::harvest, sel.harvest, deps);
        set.temperature = make(Slot::temperature, sel.temperature, deps);
        return set;
    }

    static std::string slot_name(Slot slot)
    {
        switch (slot) {
        case Slot::ph: return "ph";
        case Slot::dissolved_oxygen: return "do";
        case Slot::harvest: return "hd";
        case Slot::temperature: return "temp";
        }
        return "?";
    }

private:
    std::map<std::string, Factory>& table(Slot s) { return tables_[static_cast<int>(s)]; }
    const std::map<std::string, Factory>& table(Slot s) const { return tables_[static_cast<int>(s)]; }

    static BiomassModel biomass_model(const ControllerDeps& d)
    {
        BiomassModel m;
        m.params = &d.params;
        m.ph = d.refs.ph_ref;
        m.do_pct = d.refs.do_ref;
        m.temp = d.refs.temp_ref;
        m.depth = d.tuning.depth_ref;
        m.volume = d.geometry.volume_at_depth(d.tuning.depth_ref);
        m.pump_rate = d.limits.pump_rate;
        return m;
    }

    static ControllerRegistry builtin()
    {
        ControllerRegistry r;
        r.add(Slot::ph, "onoff", [](const ControllerDeps& d) {
            return std::make_unique<PhOnOff>(PhOnOff::Config{d.tuning.ph_upper, d.tuning.ph_lower, d.limits.q_co2_max});
        });
        r.add(Slot::ph, "pi", [](const ControllerDeps& d) {
            return std::make_unique<PhPi>(PhPi::Config{d.tuning.ph_loop.tune(), d.limits.q_co2_max});
        });
        r.add(Slot::dissolved_oxygen, "onoff", [](const ControllerDeps& d) {
            return std::make_unique<DoOnOff>(
                DoOnOff::Config{d.tuning.do_upper, d.tuning.do_lower, d.limits.q_air_max});
        });
        r.add(Slot::dissolved_oxygen, "pi", [](const ControllerDeps& d) {
            return std::make_unique<DoPi>(DoPi::Config{d.tuning.do_loop.tune(), d.limits.q_air_max});
        });
        r.add(Slot::harvest, "fixed", [](const ControllerDeps& d) {
            return std::make_unique<HarvestFixed>(HarvestFixed::Config{
                d.tuning.harvest_hour, d.tuning.harvest_minute, d.tuning.harvest_fraction});
        });
        r.add(Slot::harvest, "turbidostat", [](const ControllerDeps& d) {
            return std::make_unique<Turbidostat>(
                Turbidostat::Config{d.tuning.x_ref_gl, d.tuning.depth_ref, d.tuning.turbidostat_band, true, true});
        });
        // dilution scheduled by the optimizer, level held by the turbidostat harvest rule
        r.add(Slot::harvest, "empc", [](const ControllerDeps& d) {
            // the biomass model points at the deps' parameters; keep a private copy alive
            struct Owned final : Controller {
                ModelParameters params;
                std::unique_ptr<Controller> inner;
                void update(const ControllerContext& ctx, ControlSignals& u) override { inner->update(ctx, u); }
                std::string name() const override { return "empc"; }
            };
            auto owned = std::make_unique<Owned>();
            owned->params = d.params;
            BiomassModel m = biomass_model(d);
            m.params = &owned->params;
            auto cfg = d.tuning.empc;
            cfg.x_min_gl = d.tuning.x_ref_gl;
            cfg.price = d.tuning.empc_price;
            std::vector<std::unique_ptr<Controller>> parts;
            parts.push_back(std::make_unique<EmpcDilution>(cfg, m));
            parts.push_back(std::make_unique<Turbidostat>(
                Turbidostat::Config{d.tuning.x_ref_gl, d.tuning.depth_ref, d.tuning.turbidostat_band, false, true}));
            owned->inner = std::make_unique<CompositeController>("empc", std::move(parts));
            return owned;
        });
        r.add(Slot::temperature, "none", [](const ControllerDeps& d) {
            return std::make_unique<TempNone>(d.tuning.t_cold);
        });
        r.add(Slot::temperature, "onoff", [](const ControllerDeps& d) {
            return std::make_unique<TempOnOff>(
                TempOnOff::Config{d.tuning.temp_band, d.tuning.t_cold, d.tuning.t_hot, d.limits.q_w_max});
        });
        r.add(Slot::temperature, "pi", [](const ControllerDeps& d) {
            return std::make_unique<TempPi>(
                TempPi::Config{d.tuning.temp_loop.tune(), d.tuning.t_cold, d.tuning.t_hot, d.limits.q_w_max});
        });
        return r;
    }

    std::map<std::string, Factory> tables_[4];
};

/// The four reference players.
inline ControllerSelection player_selection(int player)
{
    switch (player) {
    case 1: return {"onoff", "onoff", "fixed", "none"};
    case 2: return {"pi", "pi", "fixed", "onoff"};
    case 3: return {"pi", "pi", "turbidostat", "pi"};
    case 4: return {"pi", "pi", "empc", "pi"};
    default: fail(ErrorKind::config, "players are numbered 1 to 4");
    }
}

} // namespace raceway
