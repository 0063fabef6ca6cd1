#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <string>
#include <utility>

#include "raceway/model/types.hpp"
#include "raceway/sim/scenario.hpp"

namespace raceway {

/// Simulation clock as seen by the controllers.
struct Timeline {
    double dt = 0.0;          ///< loop period [s]
    std::size_t index = 0;
    double time = 0.0;        ///< index·dt [s]
    double time_secday = 0.0; ///< second of the day, 1..86400
    int hour = 0;             ///< 0..24
    int min = 0;              ///< 0..59

    static Timeline at(std::size_t index, double dt, double start_offset)
    {
        Timeline tl;
        tl.dt = dt;
        tl.index = index;
        tl.time = static_cast<double>(index) * dt;
        double sec = std::fmod(tl.time + start_offset, 86400.0);
        if (sec < 0)
            sec += 86400.0;
        if (sec == 0.0)
            sec = 86400.0;
        tl.time_secday = sec;
        tl.hour = static_cast<int>(std::floor(sec / 3600.0));
        tl.min = static_cast<int>(std::floor(std::fmod(sec, 3600.0) / 60.0));
        return tl;
    }
};

struct Observation {
    double ph = 0.0;
    double do_pct = 0.0;
    double depth = 0.0;    ///< [m]
    double x_alg_gl = 0.0; ///< [g·L⁻¹]
    double temp = 0.0;     ///< [°C]
};

struct References {
    double ph_ref = 8.0;
    double do_ref = 150.0;  ///< [%]
    double temp_ref = 30.0; ///< [°C]
};

/// Perfect preview of the disturbances at the future loop instants t + dt, t + 2·dt, ...
/// up to the end of the horizon. A view into the scenario; nothing is copied.
class Forecast {
public:
    Forecast() = default;
    Forecast(const Scenario* scenario, double now, double dt, std::size_t count)
        : scenario_(scenario), now_(now), dt_(dt), count_(count)
    {
    }

    std::size_t size() const noexcept { return count_; }
    bool empty() const noexcept { return count_ == 0; }

    double t_future(std::size_t i) const { return now_ + static_cast<double>(i + 1) * dt_; }
    MeteoSample meteo(std::size_t i) const { return scenario_->at(t_future(i)); }
    double rad_global(std::size_t i) const { return meteo(i).rad_global; }
    double rad_par(std::size_t i) const { return meteo(i).rad_par; }
    double temp_ext(std::size_t i) const { return meteo(i).temp_ext; }
    double rh(std::size_t i) const { return meteo(i).rh; }
    double wind(std::size_t i) const { return meteo(i).wind; }

private:
    const Scenario* scenario_ = nullptr;
    double now_ = 0.0;
    double dt_ = 0.0;
    std::size_t count_ = 0;
};

/// The six manipulated variables shared by all controller slots.
/// Fields start as NaN so that a field no slot ever writes is detected.
struct ControlSignals {
    static constexpr double unset = std::numeric_limits<double>::quiet_NaN();

    double q_co2 = unset;   ///< [m³·s⁻¹]
    double q_air = unset;   ///< [m³·s⁻¹]
    double q_d_cmd = unset; ///< 0 or 1
    double q_h_cmd = unset; ///< 0 or 1
    double q_w = unset;     ///< [m³·s⁻¹]
    double t_in_hx = unset; ///< [°C]

    static constexpr std::array<const char*, 6> names{"q_co2", "q_air", "q_d_cmd", "q_h_cmd", "q_w", "t_in_hx"};

    std::array<double, 6> values() const noexcept { return {q_co2, q_air, q_d_cmd, q_h_cmd, q_w, t_in_hx}; }
};

/// Everything a controller sees at one loop instant.
struct ControllerContext {
    Timeline time;
    Observation obs;
    References refs;
    MeteoSample meteo;
    Forecast forecast;
};

/// A controller slot. Persistent state lives in the object.
class Controller {
public:
    virtual ~Controller() = default;
    virtual void update(const ControllerContext& ctx, ControlSignals& u) = 0;
    virtual std::string name() const = 0;
};

/// Adapts a free function with a key/value persistent store to the slot contract.
class FunctionController final : public Controller {
public:
    using State = std::map<std::string, double>;
    using Fn = std::function<void(const ControllerContext&, ControlSignals&, State&)>;

    FunctionController(std::string name, Fn fn, State initial = {})
        : name_(std::move(name)), fn_(std::move(fn)), state_(std::move(initial))
    {
    }

    void update(const ControllerContext& ctx, ControlSignals& u) override { fn_(ctx, u, state_); }
    std::string name() const override { return name_; }
    const State& state() const noexcept { return state_; }

private:
    std::string name_;
    Fn fn_;
    State state_;
};

/// The four slots, invoked in this order every step.
struct ControllerSet {
    std::unique_ptr<Controller> ph;
    std::unique_ptr<Controller> dissolved_oxygen;
    std::unique_ptr<Controller> harvest;
    std::unique_ptr<Controller> temperature;
};

} // namespace raceway
