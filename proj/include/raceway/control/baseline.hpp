#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "raceway/control/primitives.hpp"
#include "raceway/control/types.hpp"

namespace raceway {

/// CO₂ injection at full rate while pH is above the band, off once it falls below.
class PhOnOff final : public Controller {
public:
    struct Config {
        double upper = 8.1;
        double lower = 7.9;
        double q_co2_max = 0.0;
    };
    explicit PhOnOff(Config cfg) : cfg_(cfg) {}

    void update(const ControllerContext& ctx, ControlSignals& u) override
    {
        active_ = onoff_hysteresis(ctx.obs.ph, cfg_.upper, cfg_.lower, active_);
        u.q_co2 = active_ ? cfg_.q_co2_max : 0.0;
    }
    std::string name() const override { return "onoff"; }
    bool active() const noexcept { return active_; }

private:
    Config cfg_;
    bool active_ = false;
};

/// Aeration at full rate while DO is above the band.
class DoOnOff final : public Controller {
public:
    struct Config {
        double upper = 150.0;
        double lower = 145.0;
        double q_air_max = 0.0;
    };
    explicit DoOnOff(Config cfg) : cfg_(cfg) {}

    void update(const ControllerContext& ctx, ControlSignals& u) override
    {
        active_ = onoff_hysteresis(ctx.obs.do_pct, cfg_.upper, cfg_.lower, active_);
        u.q_air = active_ ? cfg_.q_air_max : 0.0;
    }
    std::string name() const override { return "onoff"; }

private:
    Config cfg_;
    bool active_ = false;
};

/// PI on pH with CO₂ flow as the manipulated variable.
class PhPi final : public Controller {
public:
    struct Config {
        PiGains gains;
        double q_co2_max = 0.0;
    };
    explicit PhPi(Config cfg) : cfg_(cfg) {}

    void update(const ControllerContext& ctx, ControlSignals& u) override
    {
        const auto out = pi_step(ctx.refs.ph_ref - ctx.obs.ph, integral_, cfg_.gains.k_c, cfg_.gains.t_i,
                                 ctx.time.dt, 0.0, cfg_.q_co2_max);
        integral_ = out.integral;
        u.q_co2 = out.u;
    }
    std::string name() const override { return "pi"; }

private:
    Config cfg_;
    double integral_ = 0.0;
};

/// PI on DO with air flow; the reference acts as an upper limit because the output saturates at 0.
class DoPi final : public Controller {
public:
    struct Config {
        PiGains gains;
        double q_air_max = 0.0;
    };
    explicit DoPi(Config cfg) : cfg_(cfg) {}

    void update(const ControllerContext& ctx, ControlSignals& u) override
    {
        const auto out = pi_step(ctx.refs.do_ref - ctx.obs.do_pct, integral_, cfg_.gains.k_c, cfg_.gains.t_i,
                                 ctx.time.dt, 0.0, cfg_.q_air_max);
        integral_ = out.integral;
        u.q_air = out.u;
    }
    std::string name() const override { return "pi"; }

private:
    Config cfg_;
    double integral_ = 0.0;
};

/// Daily batch operation: at the trigger time harvest until the depth has dropped by
/// `fraction`, then dilute back to the depth recorded at the first call.
class HarvestFixed final : public Controller {
public:
    enum class Phase { idle, harvest, dilute };
    struct Config {
        int hour = 9;
        int minute = 0;
        double fraction = 0.2;
    };
    explicit HarvestFixed(Config cfg) : cfg_(cfg) {}

    void update(const ControllerContext& ctx, ControlSignals& u) override
    {
        if (nominal_depth_ <= 0.0)
            nominal_depth_ = ctx.obs.depth;
        const double depth = ctx.obs.depth;
        if (phase_ == Phase::idle && ctx.time.hour == cfg_.hour && ctx.time.min == cfg_.minute)
            phase_ = Phase::harvest;
        if (phase_ == Phase::harvest && depth <= (1.0 - cfg_.fraction) * nominal_depth_)
            phase_ = Phase::dilute;
        if (phase_ == Phase::dilute && depth >= nominal_depth_)
            phase_ = Phase::idle;
        u.q_h_cmd = phase_ == Phase::harvest ? 1.0 : 0.0;
        u.q_d_cmd = phase_ == Phase::dilute ? 1.0 : 0.0;
    }
    std::string name() const override { return "fixed"; }
    Phase phase() const noexcept { return phase_; }
    double nominal_depth() const noexcept { return nominal_depth_; }

private:
    Config cfg_;
    Phase phase_ = Phase::idle;
    double nominal_depth_ = 0.0;
};

/// Biomass and level regulation. Each command switches on above ref·(1 + band) and off
/// below ref.
class Turbidostat final : public Controller {
public:
    struct Config {
        double x_ref = 0.5;      ///< [g·L⁻¹]
        double depth_ref = 0.15; ///< [m]
        double band = 0.01;
        bool dilution = true;
        bool harvest = true;
    };
    explicit Turbidostat(Config cfg) : cfg_(cfg) {}

    void update(const ControllerContext& ctx, ControlSignals& u) override
    {
        if (cfg_.dilution) {
            diluting_ = onoff_hysteresis(ctx.obs.x_alg_gl, cfg_.x_ref * (1.0 + cfg_.band), cfg_.x_ref, diluting_);
            u.q_d_cmd = diluting_ ? 1.0 : 0.0;
        }
        if (cfg_.harvest) {
            harvesting_ =
                onoff_hysteresis(ctx.obs.depth, cfg_.depth_ref * (1.0 + cfg_.band), cfg_.depth_ref, harvesting_);
            u.q_h_cmd = harvesting_ ? 1.0 : 0.0;
        }
    }
    std::string name() const override { return "turbidostat"; }
    bool diluting() const noexcept { return diluting_; }

private:
    Config cfg_;
    bool diluting_ = false;
    bool harvesting_ = false;
};

/// Heat exchanger idle.
class TempNone final : public Controller {
public:
    explicit TempNone(double t_in = 20.0) : t_in_(t_in) {}
    void update(const ControllerContext&, ControlSignals& u) override
    {
        u.q_w = 0.0;
        u.t_in_hx = t_in_;
    }
    std::string name() const override { return "none"; }

private:
    double t_in_;
};

/// Cold or hot stream at full flow outside the band around the reference.
class TempOnOff final : public Controller {
public:
    struct Config {
        double band = 2.0;
        double t_cold = 20.0;
        double t_hot = 50.0;
        double q_w_max = 0.0;
    };
    explicit TempOnOff(Config cfg) : cfg_(cfg), t_in_(cfg.t_cold) {}

    void update(const ControllerContext& ctx, ControlSignals& u) override
    {
        const double t = ctx.obs.temp;
        double q = 0.0;
        if (t > ctx.refs.temp_ref + cfg_.band) {
            q = cfg_.q_w_max;
            t_in_ = cfg_.t_cold;
        } else if (t < ctx.refs.temp_ref - cfg_.band) {
            q = cfg_.q_w_max;
            t_in_ = cfg_.t_hot;
        }
        u.q_w = q;
        u.t_in_hx = t_in_;
    }
    std::string name() const override { return "onoff"; }

private:
    Config cfg_;
    double t_in_;
};

/// Split-range PI: a positive output drives the hot stream, a negative one the cold stream,
/// the magnitude being the water flow.
class TempPi final : public Controller {
public:
    struct Config {
        PiGains gains;
        double t_cold = 20.0;
        double t_hot = 50.0;
        double q_w_max = 0.0;
    };
    explicit TempPi(Config cfg) : cfg_(cfg), t_in_(cfg.t_cold) {}

    void update(const ControllerContext& ctx, ControlSignals& u) override
    {
        const auto out = pi_step(ctx.refs.temp_ref - ctx.obs.temp, integral_, cfg_.gains.k_c, cfg_.gains.t_i,
                                 ctx.time.dt, -cfg_.q_w_max, cfg_.q_w_max);
        integral_ = out.integral;
        if (out.u > 0.0)
            t_in_ = cfg_.t_hot;
        else if (out.u < 0.0)
            t_in_ = cfg_.t_cold;
        u.q_w = std::abs(out.u);
        u.t_in_hx = t_in_;
    }
    std::string name() const override { return "pi"; }

private:
    Config cfg_;
    double t_in_;
    double integral_ = 0.0;
};

/// Runs several controllers in one slot, in order.
class CompositeController final : public Controller {
public:
    CompositeController(std::string name, std::vector<std::unique_ptr<Controller>> parts)
        : name_(std::move(name)), parts_(std::move(parts))
    {
    }
    void update(const ControllerContext& ctx, ControlSignals& u) override
    {
        for (auto& p : parts_)
            p->update(ctx, u);
    }
    std::string name() const override { return name_; }

private:
    std::string name_;
    std::vector<std::unique_ptr<Controller>> parts_;
};

} // namespace raceway
