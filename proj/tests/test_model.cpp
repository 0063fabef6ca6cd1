#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "support.hpp"

using namespace raceway;
using test::params;
using test::geometry;

TEST(Par, ConversionFactor)
{
    EXPECT_NEAR(par_from_global(1000.0), 2097.6, 1e-9);
    EXPECT_EQ(par_from_global(0.0), 0.0);
    EXPECT_NEAR(par_from_global(500.0), 1048.8, 1e-9);
    EXPECT_THROW(par_from_global(-1.0), Error);
    EXPECT_THROW(par_from_global(std::nan("")), Error);
}

TEST(Outputs, Definitions)
{
    auto s = test::make_state();
    const auto eq = equilibria(s.temp, params());
    s.h = 1e-5;
    s.x_o2 = eq.x_o2_eq;
    s.vol = geometry().sump_volume() + 80.0 * 0.15;
    const auto out = compute_outputs(s, geometry(), eq);
    EXPECT_NEAR(out.ph, 8.0, 1e-14);
    EXPECT_DOUBLE_EQ(out.do_pct, 100.0);
    EXPECT_NEAR(out.depth, 0.15, 1e-14);
    EXPECT_DOUBLE_EQ(out.x_alg_gl, s.x_alg / 1000.0);
}

TEST(Equilibria, ReferenceTemperatureGivesReferenceValues)
{
    const auto& e = params().eng;
    const auto k = dissociation_constants(25.0, params());
    EXPECT_DOUBLE_EQ(k.k1, e.k1_ref());
    EXPECT_DOUBLE_EQ(k.k2, e.k2_ref());
    EXPECT_DOUBLE_EQ(k.kw, e.kw_ref());
    const auto hy = henry_equilibria(25.0, params());
    EXPECT_DOUBLE_EQ(hy.kh_o2, e.kh_ref_o2);
    EXPECT_DOUBLE_EQ(hy.kh_co2, e.kh_ref_co2);
}

TEST(Equilibria, VantHoffSigns)
{
    const auto& e = params().eng;
    const auto k = dissociation_constants(35.0, params());
    EXPECT_GT(k.k1, e.k1_ref());
    EXPECT_GT(k.kw, e.kw_ref());
    // gases are less soluble when warmer
    EXPECT_LT(henry_equilibria(35.0, params()).kh_o2, e.kh_ref_o2);
    EXPECT_LT(henry_equilibria(35.0, params()).kh_co2, e.kh_ref_co2);
}

TEST(Equilibria, MatchExtendedPrecision)
{
    for (double t : {-5.0, 0.0, 15.0, 30.0, 42.5, 60.0}) {
        const auto eq = equilibria(t, params());
        const auto o = oracle::constants(t, params());
        EXPECT_LT(test::rel_err(eq.k1, o.k1), 1e-14) << t;
        EXPECT_LT(test::rel_err(eq.k2, o.k2), 1e-14) << t;
        EXPECT_LT(test::rel_err(eq.kw, o.kw), 1e-14) << t;
        EXPECT_LT(test::rel_err(eq.x_o2_eq, o.o2_eq), 1e-14) << t;
        EXPECT_LT(test::rel_err(eq.co2_eq, o.co2_eq), 1e-14) << t;
        EXPECT_LT(test::rel_err(eq.co2_iny, o.co2_iny), 1e-14) << t;
        EXPECT_GT(eq.k1, 0);
        EXPECT_GT(eq.x_o2_eq, 0);
    }
}

TEST(Equilibria, OutsideWindowIsDomainError)
{
    for (double t : {-10.5, 60.5, std::nan("")}) {
        try {
            equilibria(t, params());
            FAIL() << t;
        } catch (const Error& e) {
            EXPECT_EQ(e.kind(), ErrorKind::domain);
        }
    }
}

TEST(Speciation, Closure)
{
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> dic_d(0.0, 10.0), ph_d(4.0, 11.0), t_d(5.0, 40.0);
    for (int i = 0; i < 10000; ++i) {
        const double dic = dic_d(rng), h = 1000.0 * std::pow(10.0, -ph_d(rng));
        const auto k = dissociation_constants(t_d(rng), params());
        const auto s = speciate_carbonates(dic, h, k.k1, k.k2, k.kw);
        ASSERT_LE(std::abs(s.co2 + s.hco3 + s.co3 - dic), 1e-12 * dic);
        ASSERT_GE(s.co2, 0.0);
        ASSERT_GE(s.hco3, 0.0);
        ASSERT_GE(s.co3, 0.0);
    }
}

TEST(Speciation, Limits)
{
    const auto acid = speciate_carbonates(3.0, 1.0, 1e-4, 1e-8, 1e-8);
    EXPECT_NEAR(acid.co2 / 3.0, 1.0, 1e-3);
    const auto base = speciate_carbonates(3.0, 1e-12, 4.47e-4, 4.68e-8, 1e-8);
    EXPECT_NEAR(base.co3 / 3.0, 1.0, 1e-3);
    EXPECT_THROW(speciate_carbonates(1.0, 0.0, 1e-4, 1e-8, 1e-8), Error);
    EXPECT_THROW(speciate_carbonates(1.0, -1e-6, 1e-4, 1e-8, 1e-8), Error);
}

TEST(Speciation, NominalMatchesDirectEvaluation)
{
    const auto k = dissociation_constants(25.0, params());
    const auto s = speciate_carbonates(2.0, 1e-5, k.k1, k.k2, k.kw);
    using ld = long double;
    const ld h = 1e-5L, k1 = k.k1, k2 = k.k2;
    const ld d = h * h + h * k1 + k1 * k2;
    EXPECT_LT(test::rel_err(s.co2, static_cast<double>(2.0L * h * h / d)), 1e-14);
    EXPECT_LT(test::rel_err(s.hco3, static_cast<double>(2.0L * h * k1 / d)), 1e-14);
    EXPECT_LT(test::rel_err(s.co3, static_cast<double>(2.0L * k1 * k2 / d)), 1e-14);
    EXPECT_NEAR(s.co2 + s.hco3 + s.co3, 2.0, 2e-15);
}

TEST(Speciation, BalancingCationsZeroResidual)
{
    const auto k = dissociation_constants(20.0, params());
    const double cat = balancing_cations(4.0, 1e-5, k.k1, k.k2, k.kw);
    EXPECT_NEAR(electroneutrality_residual(4.0, cat, 1e-5, k.k1, k.k2, k.kw), 0.0, 1e-14);
}

TEST(ProtonDerivative, Signs)
{
    const auto k = dissociation_constants(25.0, params());
    const double h = 1e-5, dic = 5.0, cat = balancing_cations(dic, h, k.k1, k.k2, k.kw);
    EXPECT_EQ(proton_derivative(dic, cat, h, 0.0, 0.0, k.k1, k.k2, k.kw), 0.0);
    EXPECT_LT(proton_derivative(dic, cat, h, 0.0, 1e-3, k.k1, k.k2, k.kw), 0.0);
    // adding CO2 acidifies
    EXPECT_GT(proton_derivative(dic, cat, h, 1e-3, 0.0, k.k1, k.k2, k.kw), 0.0);
    EXPECT_THROW(proton_derivative(dic, cat, 0.0, 0.0, 0.0, k.k1, k.k2, k.kw), Error);
}

TEST(ProtonDerivative, BisectionRootTracking)
{
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> dic_d(0.5, 10.0), ph_d(6.0, 10.5), t_d(10.0, 40.0), r_d(-1e-3, 1e-3);
    const long double delta = 1e-4L;
    for (int i = 0; i < 1000; ++i) {
        const auto k = dissociation_constants(t_d(rng), params());
        const long double dic = dic_d(rng);
        const long double h0 = 1000.0L * std::pow(10.0L, -(long double)ph_d(rng));
        const long double cat = oracle::charge_balance(dic, 0.0L, h0, k.k1, k.k2, k.kw) * -1.0L;
        const long double dic_dot = r_d(rng) * dic, cat_dot = r_d(rng) * cat;
        const long double h1 = oracle::proton_root(dic, cat, k.k1, k.k2, k.kw);
        const long double h2 = oracle::proton_root(dic + delta * dic_dot, cat + delta * cat_dot, k.k1, k.k2, k.kw);
        const double fd = static_cast<double>((h2 - h1) / delta);
        const double got = proton_derivative((double)dic, (double)cat, (double)h1, (double)dic_dot,
                                             (double)cat_dot, k.k1, k.k2, k.kw);
        ASSERT_LT(test::rel_err(got, fd), 1e-4) << "sample " << i;
    }
}

TEST(SmoothWindow, Examples)
{
    EXPECT_EQ(smooth_window(5.0, 5.0, 30.0, 45.0), 0.0);
    EXPECT_EQ(smooth_window(30.0, 5.0, 30.0, 45.0), 1.0);
    EXPECT_DOUBLE_EQ(smooth_window(17.5, 5.0, 30.0, 45.0), 0.5);
    EXPECT_EQ(smooth_window(45.0, 5.0, 30.0, 45.0), 0.0);
    EXPECT_EQ(smooth_window(50.0, 5.0, 30.0, 45.0), 0.0);
    EXPECT_THROW(smooth_window(1.0, 2.0, 2.0, 3.0), Error);
    EXPECT_THROW(smooth_window(1.0, 2.0, 3.0, 3.0), Error);
}

TEST(SmoothWindow, ContinuityAndFlatSlopes)
{
    const double a = 6.0, b = 8.0, c = 10.0, h = 1e-6;
    for (double x : {a, b, c}) {
        const double f = smooth_window(x, a, b, c);
        EXPECT_NEAR(smooth_window(x - h, a, b, c), f, 1e-10);
        EXPECT_NEAR(smooth_window(x + h, a, b, c), f, 1e-10);
        EXPECT_NEAR((smooth_window(x + h, a, b, c) - f) / h, 0.0, 1e-4);
        EXPECT_NEAR((f - smooth_window(x - h, a, b, c)) / h, 0.0, 1e-4);
    }
}

TEST(Light, Limits)
{
    const auto p = params();
    const auto thin = light_limitation(1000.0, 0.0, 0.15, p);
    EXPECT_DOUBLE_EQ(thin.i_av, 1000.0);
    const auto dark = light_limitation(0.0, 500.0, 0.15, p);
    EXPECT_EQ(dark.i_av, 0.0);
    EXPECT_EQ(dark.mu_i, 0.0);
    // near the removable singularity the series and the closed form agree
    const double z = p.bio.light_extinction * 0.15 * 1e-6;
    const auto tiny = light_limitation(1000.0, 1e-6, 0.15, p);
    EXPECT_NEAR(tiny.i_av, 1000.0 * (1.0 - 0.5 * z + z * z / 6.0), 1e-9);
    EXPECT_THROW(light_limitation(-1.0, 1.0, 0.15, p), Error);
    EXPECT_THROW(light_limitation(1.0, 1.0, 0.0, p), Error);
}

TEST(Light, HalfSaturation)
{
    const auto p = params();
    const auto r = light_limitation(p.bio.light_half_sat, 0.0, 0.15, p);
    EXPECT_DOUBLE_EQ(r.mu_i, 0.5);
}

TEST(Light, BeerLambertAverage)
{
    const auto p = params();
    const double z = p.bio.light_extinction * 0.2 * 400.0;
    EXPECT_NEAR(light_limitation(1500.0, 400.0, 0.2, p).i_av, 1500.0 * (1 - std::exp(-z)) / z, 1e-10);
}

TEST(DoInhibition, Examples)
{
    const auto p = params();
    EXPECT_EQ(do_inhibition(0.0, p), 1.0);
    EXPECT_NEAR(do_inhibition(383.21, p), 0.0, 1e-15);
    EXPECT_EQ(do_inhibition(500.0, p), 0.0);
}

TEST(Biology, NightRespiration)
{
    const auto p = params();
    const auto r = biological_rates(0.0, 500.0, 0.15, 25.0, 8.0, 100.0, p);
    EXPECT_EQ(r.p_gross, 0.0);
    EXPECT_DOUBLE_EQ(r.m_resp, p.bio.m_min() * (1 + p.bio.resp_light_gain) * std::pow(p.bio.q10, 0.5));
    EXPECT_DOUBLE_EQ(maintenance_rate(1.0, 20.0, p), p.bio.m_min());
}

TEST(Biology, AllFactorsOne)
{
    auto p = params();
    p.bio.light_half_sat = 1e-12; // saturating light
    const auto r = biological_rates(2000.0, 0.0, 0.15, p.bio.temp_opt, p.bio.ph_opt, 0.0, p);
    EXPECT_NEAR(r.mu_i, 1.0, 1e-12);
    EXPECT_EQ(r.mu_t, 1.0);
    EXPECT_EQ(r.mu_ph, 1.0);
    EXPECT_EQ(r.mu_do, 1.0);
    EXPECT_NEAR(r.mu_g, p.bio.eta_x * p.bio.mu_max(), 1e-20);
}

TEST(Biology, FactorsBounded)
{
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> par(0, 3000), x(0, 2000), t(-5, 60), ph(3, 12), dop(0, 600);
    for (int i = 0; i < 5000; ++i) {
        const auto r = biological_rates(par(rng), x(rng), 0.15, t(rng), ph(rng), dop(rng), params());
        for (double f : {r.mu_i, r.mu_t, r.mu_ph, r.mu_do}) {
            ASSERT_GE(f, 0.0);
            ASSERT_LE(f, 1.0);
        }
        ASSERT_GE(r.p_gross, 0.0);
        ASSERT_EQ(r.mu_g, params().bio.eta_x * r.p_gross);
    }
}

TEST(Thermal, ExchangerLimits)
{
    auto p = params();
    EXPECT_EQ(heat_exchanger(0.0, 50.0, 25.0, p).q_hx, 0.0);
    p.thermal.hx_ua = 1e12;
    const auto hx = heat_exchanger(1e-3, 50.0, 25.0, p);
    EXPECT_DOUBLE_EQ(hx.q_hx, p.thermal.water_density * p.thermal.water_heat_capacity * 1e-3 * 25.0);
    EXPECT_DOUBLE_EQ(hx.t_out, 25.0);
}

TEST(Thermal, NoDrivingDifferenceNoFlux)
{
    auto p = params();
    p.thermal.mixing_power = 0.0;
    auto s = test::make_state(0.5, 0.15, 22.0);
    p.thermal.ground_temp = s.temp;
    MeteoSample m{0.0, 0.0, s.temp, 100.0, 3.0};
    ActuatorInputs a;
    a.t_in_hx = 40.0;
    const auto q = thermal_fluxes(s, m, a, geometry(), p, s.temp + kKelvinOffset);
    EXPECT_NEAR(q.q_sum, 0.0, 1e-9);
    EXPECT_EQ(q.m_e_dot, 0.0);
}

TEST(Thermal, ClosureAndSigns)
{
    const auto s = test::make_state();
    ActuatorInputs a{0, 0, 1e-3, 5e-4, 2e-3, 45.0};
    const auto q = thermal_fluxes(s, test::noon(), a, geometry(), params());
    EXPECT_EQ(q.q_sum, q.q_irrad + q.q_rad + q.q_cond + q.q_evap + q.q_conv + q.q_dil + q.q_harv + q.q_mix + q.q_hx);
    EXPECT_LE(q.q_evap, 0.0);
    EXPECT_GE(q.m_e_dot, 0.0);
    MeteoSample bad = test::noon();
    bad.wind = std::nan("");
    EXPECT_THROW(thermal_fluxes(s, bad, a, geometry(), params()), Error);
}

TEST(Thermal, VolumeCorrectionTerm)
{
    const double dt = temperature_derivative(0.0, 25.0, 12.0, 1e-3, params());
    EXPECT_EQ(dt, -25.0 / 12.0 * 1e-3);
}

TEST(GasTransfer, ZeroFlowAndUnitVelocity)
{
    const auto s = test::make_state();
    ActuatorInputs a;
    auto gt = gas_transfer_coeffs(a, s, geometry(), params());
    EXPECT_EQ(gt.kla_co2, 0.0);
    EXPECT_EQ(gt.strip_o2_by_co2, 0.0);
    a.q_air = geometry().sump_area();
    gt = gas_transfer_coeffs(a, s, geometry(), params());
    EXPECT_DOUBLE_EQ(gt.kla_o2, params().eng.kla_scale_o2);
    a.q_air = -1;
    EXPECT_THROW(gas_transfer_coeffs(a, s, geometry(), params()), Error);
}

TEST(StateDerivative, NoFlowsNoEvaporation)
{
    auto s = test::make_state(0.5, 0.15, 20.0);
    MeteoSample m{300.0, par_from_global(300.0), s.temp, 100.0, 1.0};
    const auto d = state_derivative(s, m, {}, geometry(), params());
    EXPECT_EQ(d.vol, 0.0);
    EXPECT_EQ(d.cat, 0.0);
}

TEST(StateDerivative, OxygenRelaxesTowardSaturation)
{
    for (double do_pct : {60.0, 140.0}) {
        auto s = test::make_state(0.0, 0.15, 20.0, 8.0, 5.0, do_pct);
        const auto d = state_derivative(s, test::night(), {}, geometry(), params());
        const double gap = equilibria(s.temp, params()).x_o2_eq - s.x_o2;
        EXPECT_GT(d.x_o2 * gap, 0.0) << do_pct;
    }
}

TEST(StateDerivative, CarbonFixedPointAtEquilibrium)
{
    // with co2 = co2_eq and nothing else acting, the DIC relaxation terms cancel
    auto p = params();
    const double t = 20.0;
    const auto eq = equilibria(t, p);
    const double h = 1e-5;
    const double dic = eq.co2_eq * (h * h + h * eq.k1 + eq.k1 * eq.k2) / (h * h);
    StateVector s{0.0, eq.x_o2_eq, dic, balancing_cations(dic, h, eq.k1, eq.k2, eq.kw), h, t,
                  geometry().volume_at_depth(0.15)};
    const auto d = state_derivative(s, test::night(), {}, geometry(), p);
    EXPECT_NEAR(d.dic, 0.0, 1e-18);
    EXPECT_NEAR(d.x_o2, 0.0, 1e-18);
    EXPECT_NEAR(d.h, 0.0, 1e-24);
}

TEST(StateDerivative, DualTranscription)
{
    const std::vector<StateVector> states{
        test::make_state(0.5, 0.15, 25.0, 8.0, 5.0, 120.0),
        test::make_state(0.9, 0.12, 31.0, 8.6, 3.0, 230.0),
        test::make_state(0.2, 0.18, 12.0, 7.3, 8.0, 80.0),
    };
    const std::vector<ActuatorInputs> acts{
        {2e-4, 5e-3, 1e-3, 1e-3, 2e-3, 48.0},
        {0.0, 8e-3, 0.0, 0.0, 5e-3, 20.0},
        {3.3e-4, 0.0, 1e-3, 0.0, 0.0, 30.0},
    };
    const std::vector<MeteoSample> skies{test::noon(), {400.0, 800.0, 33.0, 30.0, 5.0}, test::night()};
    for (const auto& s : states)
        for (const auto& a : acts)
            for (const auto& m : skies) {
                const auto got = state_derivative(s, m, a, geometry(), params()).to_array();
                const auto want = oracle::derivative(s, m, a, geometry(), params());
                for (std::size_t i = 0; i < kStateSize; ++i)
                    EXPECT_LT(test::rel_err(got[i], static_cast<double>(want[i])), 1e-10)
                        << kStateNames[i] << " got " << got[i] << " want " << (double)want[i];
            }
}

TEST(State, ValidationRejectsNonPhysical)
{
    auto s = test::make_state();
    EXPECT_NO_THROW(validate_state(s, geometry()));
    for (auto mutate : std::vector<std::function<void(StateVector&)>>{
             [](StateVector& v) { v.x_alg = -1; }, [](StateVector& v) { v.h = 0; },
             [](StateVector& v) { v.vol = 0.5; }, [](StateVector& v) { v.temp = std::nan(""); }}) {
        auto bad = s;
        mutate(bad);
        EXPECT_THROW(validate_state(bad, geometry()), Error);
    }
}

TEST(Parameters, DefaultFileSatisfiesInvariants)
{
    EXPECT_NO_THROW(params().validate());
    EXPECT_NO_THROW(geometry().validate());
    EXPECT_DOUBLE_EQ(geometry().area(), 80.0);
    EXPECT_EQ(params().eng.y_pure_co2, 1.0);
    auto p = params();
    p.bio.temp_min = p.bio.temp_opt;
    EXPECT_THROW(p.validate(), Error);
}
