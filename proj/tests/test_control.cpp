#include <gtest/gtest.h>

#include <deque>
#include <random>

#include "oracles.hpp"
#include "support.hpp"

using namespace raceway;

namespace {

ControllerContext context(double ph = 8.0, double do_pct = 150.0, double depth = 0.15, double x_gl = 0.5,
                          double temp = 30.0, std::size_t index = 0, double offset = 0.0)
{
    ControllerContext ctx;
    ctx.time = Timeline::at(index, 60.0, offset);
    ctx.obs = {ph, do_pct, depth, x_gl, temp};
    return ctx;
}

} // namespace

TEST(Hysteresis, Examples)
{
    EXPECT_TRUE(onoff_hysteresis(8.2, 8.1, 7.9, false));
    EXPECT_TRUE(onoff_hysteresis(8.0, 8.1, 7.9, true));
    EXPECT_FALSE(onoff_hysteresis(8.0, 8.1, 7.9, false));
    EXPECT_FALSE(onoff_hysteresis(7.8, 8.1, 7.9, true));
    EXPECT_THROW(onoff_hysteresis(8.0, 7.9, 7.9, true), Error);
}

TEST(Hysteresis, MonotoneInputTogglesAtMostOnce)
{
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> step(0.0, 0.05);
    for (int trial = 0; trial < 200; ++trial) {
        // rising from below the band with the output off, or falling from above with it on
        const bool rising = trial % 2 == 0;
        double y = rising ? 7.7 : 8.3;
        bool on = !rising;
        int toggles = 0;
        for (int k = 0; k < 30; ++k) {
            y += rising ? step(rng) : -step(rng);
            const bool next = onoff_hysteresis(y, 8.1, 7.9, on);
            toggles += next != on;
            on = next;
        }
        EXPECT_LE(toggles, 1);
    }
}

TEST(Simc, ReproducesReferenceGains)
{
    const ControllerTuning t;
    const auto ph = t.ph_loop.tune();
    const auto dox = t.do_loop.tune();
    const auto temp = t.temp_loop.tune();
    // three significant figures
    EXPECT_NEAR(ph.k_c, -6.15e-4, 0.005e-4);
    EXPECT_NEAR(ph.t_i, 1051.0, 0.5);
    EXPECT_NEAR(dox.k_c, -1.98e-4, 0.005e-4);
    EXPECT_NEAR(dox.t_i, 3109.0, 0.5);
    EXPECT_NEAR(temp.k_c, 1.40e-4, 0.005e-4);
    EXPECT_NEAR(temp.t_i, 2850.0, 0.5);
}

TEST(Simc, RejectsBadModels)
{
    EXPECT_THROW(simc_tune(0.0, 100.0, 10.0, 10.0), Error);
    EXPECT_THROW(simc_tune(1.0, 0.0, 10.0, 10.0), Error);
    EXPECT_THROW(simc_tune(1.0, 100.0, -1.0, 10.0), Error);
}

TEST(Pi, ZeroErrorZeroOutput)
{
    const auto out = pi_step(0.0, 0.0, 2.0, 100.0, 60.0, 0.0, 10.0);
    EXPECT_EQ(out.u, 0.0);
    EXPECT_EQ(out.integral, 0.0);
}

TEST(Pi, IntegralAccumulates)
{
    const double kc = 0.5, ti = 200.0, dt = 60.0, e = 0.3;
    double integral = 0.0, u = 0.0;
    for (int n = 0; n < 5; ++n) {
        const auto out = pi_step(e, integral, kc, ti, dt, -100.0, 100.0);
        integral = out.integral;
        u = out.u;
    }
    EXPECT_NEAR(u, kc * e + kc * e / ti * dt * 5, 1e-15);
}

TEST(Pi, AntiWindupReleasesFaster)
{
    // saturate for 300 steps, then reverse the error and count steps until u leaves the upper limit
    auto release = [](auto step) {
        double integral = 0.0;
        for (int k = 0; k < 300; ++k)
            integral = step(1.0, integral, 1.0, 10.0, 1.0, -1.0, 1.0).integral;
        const double wound = integral;
        int n = 0;
        for (PiOutput out{1.0, integral}; out.u >= 1.0 && n < 100000; ++n)
            out = step(-0.2, out.integral, 1.0, 10.0, 1.0, -1.0, 1.0);
        return std::pair{n, wound};
    };
    const auto [aw, aw_integral] = release(pi_step);
    const auto [naive, naive_integral] = release(pi_step_naive);
    EXPECT_LE(aw_integral, 1.0);
    EXPECT_GT(naive_integral, 20.0);
    EXPECT_LT(aw, naive);
    EXPECT_EQ(aw, 1);
}

TEST(Pi, FopdtDoLoopSettlesWithModestOvershoot)
{
    // deviation model y' = (K·u(t − θ) − y)/τ, PI sampled every 60 s
    const double k = -24460.0, tau = 3773.6, theta = 400.0, dt = 1.0, ts = 60.0;
    const auto g = simc_tune(k, tau, theta, 377.25);
    const double ref = 10.0;
    std::deque<double> line(static_cast<std::size_t>(theta / dt), 0.0);
    double y = 0.0, u = 0.0, integral = 0.0, peak = 0.0;
    const int total = 20 * 3600;
    for (int i = 0; i < total; ++i) {
        if (i % static_cast<int>(ts) == 0) {
            const auto out = pi_step(ref - y, integral, g.k_c, g.t_i, ts, -1.0, 1.0);
            integral = out.integral;
            u = out.u;
        }
        line.push_back(u);
        const double delayed = line.front();
        line.pop_front();
        y += dt * (k * delayed - y) / tau;
        peak = std::max(peak, y);
    }
    EXPECT_NEAR(y, ref, 1e-3 * ref);
    EXPECT_LT((peak - ref) / ref, 0.25);
}

TEST(BaselineControllers, PhOnOff)
{
    PhOnOff c({8.1, 7.9, 3e-4});
    ControlSignals u;
    c.update(context(8.3), u);
    EXPECT_EQ(u.q_co2, 3e-4);
    c.update(context(8.0), u);
    EXPECT_EQ(u.q_co2, 3e-4);
    c.update(context(7.85), u);
    EXPECT_EQ(u.q_co2, 0.0);
}

TEST(BaselineControllers, DoOnOff)
{
    DoOnOff c({150.0, 145.0, 8e-3});
    ControlSignals u;
    c.update(context(8.0, 140.0), u);
    EXPECT_EQ(u.q_air, 0.0);
    c.update(context(8.0, 151.0), u);
    EXPECT_EQ(u.q_air, 8e-3);
}

TEST(BaselineControllers, PiSlotsActInTheRightDirection)
{
    const ControllerTuning t;
    PhPi ph({t.ph_loop.tune(), 3e-4});
    DoPi dox({t.do_loop.tune(), 8e-3});
    ControlSignals u;
    ControllerContext ctx = context(8.5, 200.0);
    ctx.refs = {8.0, 150.0, 30.0};
    ph.update(ctx, u);
    dox.update(ctx, u);
    EXPECT_GT(u.q_co2, 0.0);
    EXPECT_GT(u.q_air, 0.0);
    ctx = context(7.5, 100.0);
    PhPi ph2({t.ph_loop.tune(), 3e-4});
    ph2.update(ctx, u);
    EXPECT_EQ(u.q_co2, 0.0);
}

TEST(BaselineControllers, HarvestFixedPhases)
{
    HarvestFixed c({9, 0, 0.2});
    ControlSignals u;
    c.update(context(8, 150, 0.15, 0.5, 30, 0), u); // records the nominal depth
    EXPECT_EQ(c.phase(), HarvestFixed::Phase::idle);
    c.update(context(8, 150, 0.15, 0.5, 30, 9 * 60), u);
    EXPECT_EQ(c.phase(), HarvestFixed::Phase::harvest);
    EXPECT_EQ(u.q_h_cmd, 1.0);
    EXPECT_EQ(u.q_d_cmd, 0.0);
    c.update(context(8, 150, 0.79 * 0.15, 0.5, 30, 9 * 60 + 30), u);
    EXPECT_EQ(c.phase(), HarvestFixed::Phase::dilute);
    EXPECT_EQ(u.q_h_cmd, 0.0);
    EXPECT_EQ(u.q_d_cmd, 1.0);
    c.update(context(8, 150, 0.15, 0.5, 30, 9 * 60 + 60), u);
    EXPECT_EQ(c.phase(), HarvestFixed::Phase::idle);
}

TEST(BaselineControllers, TemperatureOnOff)
{
    TempOnOff c({2.0, 20.0, 50.0, 5e-3});
    ControlSignals u;
    auto ctx = context(8, 150, 0.15, 0.5, 33.0);
    c.update(ctx, u);
    EXPECT_EQ(u.q_w, 5e-3);
    EXPECT_EQ(u.t_in_hx, 20.0);
    ctx.obs.temp = 26.0;
    c.update(ctx, u);
    EXPECT_EQ(u.q_w, 5e-3);
    EXPECT_EQ(u.t_in_hx, 50.0);
    ctx.obs.temp = 30.0;
    c.update(ctx, u);
    EXPECT_EQ(u.q_w, 0.0);
}

TEST(BaselineControllers, TemperaturePiSplitRange)
{
    const ControllerTuning t;
    TempPi c({t.temp_loop.tune(), 20.0, 50.0, 5e-3});
    ControlSignals u;
    auto ctx = context(8, 150, 0.15, 0.5, 25.0);
    c.update(ctx, u);
    EXPECT_GT(u.q_w, 0.0);
    EXPECT_EQ(u.t_in_hx, 50.0);
    TempPi d({t.temp_loop.tune(), 20.0, 50.0, 5e-3});
    ctx.obs.temp = 36.0;
    d.update(ctx, u);
    EXPECT_GT(u.q_w, 0.0);
    EXPECT_EQ(u.t_in_hx, 20.0);
}

TEST(BaselineControllers, TurbidostatExamples)
{
    Turbidostat c({0.5, 0.15, 0.01, true, true});
    ControlSignals u;
    c.update(context(8, 150, 0.149, 0.55), u);
    EXPECT_EQ(u.q_d_cmd, 1.0);
    EXPECT_EQ(u.q_h_cmd, 0.0);
    c.update(context(8, 150, 0.16, 0.499), u);
    EXPECT_EQ(u.q_d_cmd, 0.0);
    EXPECT_EQ(u.q_h_cmd, 1.0);
}

TEST(BaselineControllers, TurbidostatDilutionMonotoneInBiomass)
{
    for (bool state : {false, true}) {
        double last = 0.0;
        for (double x = 0.45; x < 0.56; x += 0.001) {
            Turbidostat c({0.5, 0.15, 0.01, true, false});
            ControlSignals u;
            if (state)
                c.update(context(8, 150, 0.15, 0.6), u);
            c.update(context(8, 150, 0.15, x), u);
            EXPECT_GE(u.q_d_cmd, last);
            last = u.q_d_cmd;
        }
    }
}

TEST(Registry, PlayersAndNames)
{
    const auto& reg = ControllerRegistry::instance();
    using Slot = ControllerRegistry::Slot;
    EXPECT_TRUE(reg.has(Slot::harvest, "empc"));
    EXPECT_FALSE(reg.has(Slot::ph, "mpc"));
    EXPECT_THROW(player_selection(5), Error);
    ControllerDeps deps{ActuatorLimits{}, test::params(), test::geometry(), References{}, {}};
    const auto set = reg.make_set(player_selection(4), deps);
    EXPECT_EQ(set.ph->name(), "pi");
    EXPECT_EQ(set.harvest->name(), "empc");
    EXPECT_EQ(set.temperature->name(), "pi");
    EXPECT_THROW(reg.make(Slot::temperature, "bogus", deps), Error);
}

TEST(Empc, DarkDecayIsStrictlyDecreasing)
{
    const auto& p = test::params();
    const auto m = test::empc_model(p);
    const std::vector<double> par(4 * m.substeps_per_slot, 0.0);
    const std::vector<unsigned char> seq(4, 0);
    const auto traj = predict_biomass(0.6, par, seq, m);
    ASSERT_EQ(traj.size(), 5u);
    for (std::size_t k = 1; k < traj.size(); ++k)
        EXPECT_LT(traj[k], traj[k - 1]);
}

TEST(Empc, ZeroNetGrowthIsConstant)
{
    auto p = test::params();
    p.bio.m_min_per_day = 0.0;
    const auto m = test::empc_model(p);
    const std::vector<double> par(2 * m.substeps_per_slot, 0.0);
    const std::vector<unsigned char> seq(2, 0);
    for (double x : predict_biomass(0.7, par, seq, m))
        EXPECT_EQ(x, 0.7);
}

TEST(Empc, PredictionMatchesFineStepReference)
{
    const auto& p = test::params();
    auto m = test::empc_model(p);
    std::vector<double> par;
    for (std::size_t j = 0; j < 4 * m.substeps_per_slot; ++j)
        par.push_back(par_from_global(900.0 - 4.0 * j));
    const std::vector<unsigned char> seq{1, 0, 1, 1};
    const auto traj = predict_biomass(0.55, par, seq, m);
    // explicit Euler at 0.01 s as reference
    double x = 0.55;
    for (std::size_t k = 0; k < seq.size(); ++k) {
        for (std::size_t j = 0; j < m.substeps_per_slot; ++j)
            for (int s = 0; s < 6000; ++s)
                x += 0.01 * m.rate(x, par[k * m.substeps_per_slot + j], seq[k]);
        EXPECT_LT(test::rel_err(traj[k + 1], x), 0.005);
    }
}

TEST(Empc, InfeasibleWithoutLight)
{
    const auto& p = test::params();
    const auto m = test::empc_model(p);
    const std::vector<double> par(4 * m.substeps_per_slot, 0.0);
    const auto d = empc_optimize(0.5, par, 4, m, 0.5, 1.0);
    EXPECT_FALSE(d.feasible);
    EXPECT_EQ(d.sequence.front(), 0);
    EXPECT_EQ(d.cost, 0.0);
}

TEST(Empc, DilutesWhenAboveReference)
{
    const auto& p = test::params();
    const auto m = test::empc_model(p);
    const std::vector<double> par(4 * m.substeps_per_slot, par_from_global(600.0));
    const auto d = empc_optimize(1.0, par, 4, m, 0.5, 1.0);
    ASSERT_TRUE(d.feasible);
    EXPECT_EQ(d.sequence.front(), 1);
    // cost falls with each extra feasible dilution slot
    double last = 0.0;
    for (std::size_t ones = 1; ones <= 4; ++ones) {
        std::vector<unsigned char> seq(4, 0);
        std::fill(seq.begin(), seq.begin() + static_cast<long>(ones), 1);
        const auto traj = predict_biomass(1.0, par, seq, m);
        ASSERT_GE(traj.back(), 0.5);
        double harvested = 0.0;
        for (std::size_t k = 0; k < 4; ++k)
            harvested += seq[k] * traj[k] * 1000.0 * m.pump_rate * m.slot_length();
        EXPECT_LT(-harvested, last);
        last = -harvested;
    }
}

TEST(Empc, MatchesExhaustiveOracleAndScaleInvariance)
{
    std::mt19937_64 rng(17);
    auto u = [&](double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); };
    const auto& p = test::params();
    int checked = 0;
    while (checked < 200) {
        auto m = test::empc_model(p);
        m.pump_rate = u(2e-4, 2e-3);
        const std::size_t n = 1 + static_cast<std::size_t>(u(0.0, 4.0));
        std::vector<double> par(n * m.substeps_per_slot);
        const double peak = u(0.0, 2000.0);
        for (auto& v : par)
            v = peak * u(0.5, 1.0);
        const double x0 = u(0.45, 0.9);
        const std::vector<unsigned char> none(n, 0);
        if (predict_biomass(x0, par, none, m).back() < 0.5)
            continue; // infeasible instance
        const auto got = empc_optimize(x0, par, n, m, 0.5, 1.0);
        const auto want = oracle::empc_search(x0, par, n, m, 0.5, 1.0);
        ASSERT_TRUE(got.feasible);
        ASSERT_EQ(got.sequence, want.sequence) << "instance " << checked;
        for (double price : {1e-3, 0.37, 42.0, 1e5})
            ASSERT_EQ(empc_optimize(x0, par, n, m, 0.5, price).sequence, got.sequence);
        ++checked;
    }
}

TEST(Empc, HorizonBounds)
{
    const auto& p = test::params();
    const auto m = test::empc_model(p);
    const std::vector<double> par(17 * m.substeps_per_slot, 100.0);
    EXPECT_THROW(empc_optimize(0.5, par, 0, m, 0.5, 1.0), Error);
    EXPECT_THROW(empc_optimize(0.5, par, 17, m, 0.5, 1.0), Error);
    const std::vector<double> short_par(m.substeps_per_slot, 100.0);
    const std::vector<unsigned char> seq(2, 0);
    EXPECT_THROW(predict_biomass(0.5, short_par, seq, m), Error);
}

TEST(Empc, ControllerShrinksHorizonNearTheEnd)
{
    const auto& p = test::params();
    auto sc = test::constant_scenario({800.0, par_from_global(800.0), 25.0, 50.0, 2.0}, 7200.0, 60.0);
    EmpcDilution c({}, test::empc_model(p));
    ControlSignals u;
    auto ctx = context(8, 150, 0.15, 0.8);
    ctx.meteo = sc.sample(0);
    // 30 loop instants left: two 15-minute slots
    ctx.forecast = Forecast(&sc, 0.0, 60.0, 29);
    c.update(ctx, u);
    EXPECT_EQ(c.last_decision().sequence.size(), 2u);
    EXPECT_EQ(u.q_d_cmd, 1.0);
    // held between solves
    ctx.time = Timeline::at(1, 60.0, 0.0);
    c.update(ctx, u);
    EXPECT_EQ(c.solves(), 1u);
    // night switches it off
    ctx.meteo.rad_global = 50.0;
    c.update(ctx, u);
    EXPECT_EQ(u.q_d_cmd, 0.0);
}
