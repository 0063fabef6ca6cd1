#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "raceway/control/types.hpp"
#include "raceway/model/biology.hpp"
#include "raceway/model/parameters.hpp"

namespace raceway {

/// Biomass-only prediction model: every other process variable is pinned.
struct BiomassModel {
    const ModelParameters* params = nullptr;
    double ph = 8.0;
    double do_pct = 150.0;
    double temp = 30.0;
    double depth = 0.15;     ///< [m]
    double volume = 0.0;     ///< culture volume at `depth` [m³]
    double pump_rate = 0.0;  ///< dilution flow when a slot bit is set [m³·s⁻¹]
    double substep = 60.0;   ///< [s], one PAR value per substep
    std::size_t substeps_per_slot = 15;

    double slot_length() const noexcept { return substep * static_cast<double>(substeps_per_slot); }

    /// dx/dt in g·L⁻¹·s⁻¹.
    double rate(double x_gl, double par, bool dilute) const
    {
        const auto r = biological_rates(par, std::max(x_gl, 0.0) * 1000.0, depth, temp, ph, do_pct, *params);
        const double q = dilute ? pump_rate : 0.0;
        return (r.mu_g - r.m_resp - q / volume) * x_gl;
    }
};

/// Biomass at each slot boundary (N + 1 values, g·L⁻¹) under a dilution sequence.
/// `par` carries one value per substep and must cover N slots.
inline std::vector<double> predict_biomass(double x0_gl, std::span<const double> par,
                                           std::span<const unsigned char> sequence, const BiomassModel& m)
{
    if (par.size() < sequence.size() * m.substeps_per_slot)
        fail(ErrorKind::controller, "irradiance preview shorter than the prediction horizon");
    std::vector<double> traj{x0_gl};
    traj.reserve(sequence.size() + 1);
    double x = x0_gl;
    const double h = m.substep;
    std::size_t j = 0;
    for (unsigned char bit : sequence) {
        const bool d = bit != 0;
        for (std::size_t s = 0; s < m.substeps_per_slot; ++s, ++j) {
            const double i = par[j];
            const double k1 = m.rate(x, i, d);
            const double k2 = m.rate(x + 0.5 * h * k1, i, d);
            const double k3 = m.rate(x + 0.5 * h * k2, i, d);
            const double k4 = m.rate(x + h * k3, i, d);
            x += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        }
        traj.push_back(x);
    }
    return traj;
}

struct EmpcDecision {
    std::vector<unsigned char> sequence;
    std::vector<double> trajectory; ///< [g·L⁻¹]
    double cost = 0.0;
    bool feasible = false;
};

/// Exhaustive search over all 2^N dilution sequences.
///
/// Cost: −price · Σ x(k)·q_d(k)·slot, with x in g·m⁻³, i.e. the value of harvested biomass.
/// Sequences ending below `x_min_gl` are discarded. Ties go to fewer dilution slots, then to
/// the lexicographically smallest sequence. With no feasible sequence the all-zero sequence
/// is returned with feasible = false.
inline EmpcDecision empc_optimize(double x0_gl, std::span<const double> par, std::size_t horizon,
                                  const BiomassModel& m, double x_min_gl, double price)
{
    if (horizon == 0 || horizon > 16)
        fail(ErrorKind::controller, "EMPC horizon must lie in [1, 16] slots");
    EmpcDecision best;
    best.sequence.assign(horizon, 0);
    best.cost = std::numeric_limits<double>::infinity();
    int best_ones = 0;
    std::vector<unsigned char> seq(horizon);
    const std::size_t count = std::size_t{1} << horizon;
    for (std::size_t mask = 0; mask < count; ++mask) {
        for (std::size_t k = 0; k < horizon; ++k)
            seq[k] = static_cast<unsigned char>((mask >> (horizon - 1 - k)) & 1U);
        auto traj = predict_biomass(x0_gl, par, seq, m);
        if (!(traj.back() >= x_min_gl))
            continue;
        double harvested = 0.0;
        for (std::size_t k = 0; k < horizon; ++k)
            if (seq[k])
                harvested += traj[k] * 1000.0 * m.pump_rate * m.slot_length();
        const double cost = -price * harvested;
        const int ones = std::popcount(mask);
        // masks are visited in lexicographic order, so equal cost and equal ones keeps the earlier one
        if (cost < best.cost || (cost == best.cost && ones < best_ones)) {
            best.sequence = seq;
            best.trajectory = std::move(traj);
            best.cost = cost;
            best.feasible = true;
            best_ones = ones;
        }
    }
    if (!best.feasible) {
        best.cost = 0.0;
        best.trajectory = predict_biomass(x0_gl, par, best.sequence, m);
    }
    return best;
}

/// Daytime dilution scheduler. Re-optimizes every slot while irradiance exceeds the threshold
/// and holds the first action in between; off otherwise.
class EmpcDilution final : public Controller {
public:
    struct Config {
        std::size_t max_slots = 4;
        double rad_threshold = 100.0; ///< [W·m⁻²]
        double x_min_gl = 0.5;
        double price = 1.0;           ///< per gram
        double slot = 900.0;          ///< [s]
    };

    EmpcDilution(Config cfg, BiomassModel model) : cfg_(cfg), model_(model) {}

    void update(const ControllerContext& ctx, ControlSignals& u) override
    {
        if (!(ctx.meteo.rad_global > cfg_.rad_threshold)) {
            solved_ = false;
            action_ = 0.0;
            u.q_d_cmd = 0.0;
            return;
        }
        if (!solved_ || ctx.time.time - last_solve_ >= cfg_.slot - 1e-9) {
            solve(ctx);
            solved_ = true;
            last_solve_ = ctx.time.time;
        }
        u.q_d_cmd = action_;
    }
    std::string name() const override { return "empc"; }

    const EmpcDecision& last_decision() const noexcept { return decision_; }
    std::size_t solves() const noexcept { return solves_; }

private:
    void solve(const ControllerContext& ctx)
    {
        BiomassModel m = model_;
        m.substep = ctx.time.dt;
        m.substeps_per_slot = std::max<std::size_t>(1, static_cast<std::size_t>(std::lround(cfg_.slot / ctx.time.dt)));
        const std::size_t per_slot = m.substeps_per_slot;

        // consecutive daylight samples ahead, counting the current one
        std::size_t daylight = 1;
        while (daylight - 1 < ctx.forecast.size() && ctx.forecast.rad_global(daylight - 1) > cfg_.rad_threshold)
            ++daylight;
        const std::size_t available = 1 + ctx.forecast.size();
        std::size_t n = std::min({cfg_.max_slots, daylight / per_slot, available / per_slot});
        n = std::max<std::size_t>(n, 1);

        par_.assign(n * per_slot, 0.0);
        par_[0] = ctx.meteo.rad_par;
        for (std::size_t i = 1; i < par_.size(); ++i)
            par_[i] = i - 1 < ctx.forecast.size() ? ctx.forecast.rad_par(i - 1) : par_[i - 1];

        decision_ = empc_optimize(ctx.obs.x_alg_gl, par_, n, m, cfg_.x_min_gl, cfg_.price);
        action_ = decision_.sequence.front() ? 1.0 : 0.0;
        ++solves_;
    }

    Config cfg_;
    BiomassModel model_;
    EmpcDecision decision_;
    std::vector<double> par_;
    double action_ = 0.0;
    double last_solve_ = 0.0;
    bool solved_ = false;
    std::size_t solves_ = 0;
};

} // namespace raceway
